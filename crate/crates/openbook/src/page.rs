//! The planar page and its curve data.
//!
//! The page `F_k` is a disk with `2k+1` inner holes labeled `0..=2k` plus the
//! outer boundary labeled `2k+1`. Hole `0` sits at the top, odd labels run
//! along the upper row and even labels along the lower row, so the index
//! arithmetic of the multiplicity rules transfers directly.
//!
//! A curve is recorded by the set of inner holes it encloses together with a
//! based word; curves constructed here are in standard position, so the word
//! is the ascending product of one plain letter per enclosed hole.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

use crate::word::FreeWord;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PageError {
    #[error("k must be at least 1, got {0}")]
    InvalidK(usize),
    #[error("boundary label {label} out of range 0..={max}")]
    LabelOutOfRange { label: usize, max: usize },
    #[error("curve must enclose at least one hole")]
    EmptyHoleSet,
    #[error("hole {hole} out of range for a page with k = {k}")]
    HoleOutOfRange { hole: usize, k: usize },
    #[error("curve word letters do not match the enclosed holes")]
    WordHoleMismatch,
    #[error("outer-parallel curve must enclose every inner hole")]
    BadOuterParallel,
}

/// The planar page `F_k`: `2k+1` inner holes and one outer boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page {
    k: usize,
}

impl Page {
    pub fn new(k: usize) -> Result<Self, PageError> {
        if k == 0 {
            return Err(PageError::InvalidK(k));
        }
        Ok(Page { k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of inner holes, `2k+1`.
    pub fn holes(&self) -> usize {
        2 * self.k + 1
    }

    /// Label of the outer boundary component, `2k+1`.
    pub fn outer_label(&self) -> usize {
        2 * self.k + 1
    }
}

/// One signed twist along a standard-position curve, identified by its hole
/// set alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveTwist {
    pub holes: BTreeSet<usize>,
    pub inverse: bool,
}

impl PrimitiveTwist {
    fn cancels(&self, other: &PrimitiveTwist) -> bool {
        self.holes == other.holes && self.inverse != other.inverse
    }
}

/// A twist expressed as a reduced word in standard-position twists. Hurwitz
/// moves conjugate twists by their neighbors; at this level the conjugation
/// is plain concatenation, and the concatenated word of a whole moved
/// factorization telescopes back to the original sequence. Words here grow
/// linearly with the move count while materialized automorphism images can
/// grow exponentially, so materialization is deferred to the moment a whole
/// product is realized.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistWord {
    factors: Vec<PrimitiveTwist>,
}

impl TwistWord {
    pub fn single(holes: BTreeSet<usize>) -> Self {
        TwistWord { factors: vec![PrimitiveTwist { holes, inverse: false }] }
    }

    pub fn factors(&self) -> &[PrimitiveTwist] {
        &self.factors
    }

    pub fn inverse(&self) -> Self {
        TwistWord {
            factors: self
                .factors
                .iter()
                .rev()
                .map(|p| PrimitiveTwist { holes: p.holes.clone(), inverse: !p.inverse })
                .collect(),
        }
    }

    /// Concatenation with free reduction over the twist alphabet.
    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut out: Vec<PrimitiveTwist> = self.factors.clone();
        for p in &other.factors {
            match out.last() {
                Some(top) if top.cancels(p) => {
                    out.pop();
                }
                _ => out.push(p.clone()),
            }
        }
        TwistWord { factors: out }
    }

    /// `b⁻¹ · a · b`, reduced.
    pub fn conjugated_by(a: &TwistWord, b: &TwistWord) -> TwistWord {
        b.inverse().concat(a).concat(b)
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// A monodromy curve: the inner holes it encloses plus its based word.
///
/// The word of a standard-position curve is the ascending product of the
/// enclosed generators. Hurwitz moves rewrite words through twist images, so
/// words of moved curves generally carry inverse letters as well; such curves
/// keep their twist action alongside the word as a [`TwistWord`]. The twist
/// payload never enters equality or serialization — the (holes, word) pair is
/// the curve identity.
#[derive(Debug, Clone)]
pub struct CurveClass {
    holes: BTreeSet<usize>,
    word: FreeWord,
    outer_parallel: bool,
    twist: Option<TwistWord>,
}

impl PartialEq for CurveClass {
    fn eq(&self, other: &Self) -> bool {
        self.holes == other.holes
            && self.word == other.word
            && self.outer_parallel == other.outer_parallel
    }
}

impl Eq for CurveClass {}

impl CurveClass {
    /// Standard-position curve enclosing `holes`, word in ascending order.
    pub fn standard(page: &Page, holes: impl IntoIterator<Item = usize>) -> Result<Self, PageError> {
        let holes: BTreeSet<usize> = holes.into_iter().collect();
        Self::with_word(page, holes.clone(), FreeWord::ascending(holes), false)
    }

    pub fn with_word(
        page: &Page,
        holes: BTreeSet<usize>,
        word: FreeWord,
        outer_parallel: bool,
    ) -> Result<Self, PageError> {
        if holes.is_empty() {
            // A curve enclosing no hole is nullhomotopic; positive
            // factorizations never twist along contractible curves.
            return Err(PageError::EmptyHoleSet);
        }
        if let Some(&max) = holes.iter().max() {
            if max >= page.holes() {
                return Err(PageError::HoleOutOfRange { hole: max, k: page.k });
            }
        }
        // One occurrence of x_i per enclosed hole i, net exponent +1.
        for &h in &holes {
            if word.exponent_sum(h) != 1 {
                return Err(PageError::WordHoleMismatch);
            }
        }
        for l in word.letters() {
            if !holes.contains(&l.gen) && word.exponent_sum(l.gen) != 0 {
                return Err(PageError::WordHoleMismatch);
            }
            if l.gen >= page.holes() {
                return Err(PageError::HoleOutOfRange { hole: l.gen, k: page.k });
            }
        }
        if outer_parallel && holes.len() != page.holes() {
            return Err(PageError::BadOuterParallel);
        }
        Ok(CurveClass { holes, word, outer_parallel, twist: None })
    }

    /// Attaches the twist word of a moved curve.
    pub fn carrying_twist(mut self, twist: TwistWord) -> Self {
        self.twist = Some(twist);
        self
    }

    /// The curve's twist as a word in standard twists: the attached word for
    /// moved curves, the single standard twist for standard-position curves,
    /// and nothing otherwise.
    pub fn twist_word(&self) -> Option<TwistWord> {
        if let Some(w) = &self.twist {
            return Some(w.clone());
        }
        if self.has_standard_word() {
            return Some(TwistWord::single(self.holes.clone()));
        }
        None
    }

    pub fn holes(&self) -> &BTreeSet<usize> {
        &self.holes
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn is_outer_parallel(&self) -> bool {
        self.outer_parallel
    }

    /// Inner-boundary-parallel means a single enclosed hole.
    pub fn is_inner_parallel(&self) -> bool {
        self.holes.len() == 1
    }

    /// True when the word is the ascending product of plain letters, one per
    /// hole — the form every constructor in this module produces.
    pub fn has_standard_word(&self) -> bool {
        self.word == FreeWord::ascending(self.holes.iter().copied())
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let holes: Vec<String> = self.holes.iter().map(|h| h.to_string()).collect();
        write!(f, "{{{}}}", holes.join(","))?;
        if self.outer_parallel {
            write!(f, " (outer-parallel)")?;
        }
        Ok(())
    }
}

/// An ordered product of positive Dehn twists. The leftmost curve is applied
/// last, matching functional notation for mapping-class products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    page: Page,
    curves: Vec<CurveClass>,
}

impl Factorization {
    pub fn new(page: Page, curves: Vec<CurveClass>) -> Result<Self, PageError> {
        for c in &curves {
            if let Some(&max) = c.holes().iter().max() {
                if max >= page.holes() {
                    return Err(PageError::HoleOutOfRange { hole: max, k: page.k() });
                }
            }
        }
        Ok(Factorization { page, curves })
    }

    pub fn page(&self) -> &Page {
        &self.page
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }
}

/// The canonical positive factorization `[V_0, V_1, …, V_k, V_{k+1}]`.
///
/// Hole sets: `V_0` encloses `{0, 1, 3, …, 2k−1}`, `V_h` encloses
/// `{2h−1, 2h}` for `1 ≤ h ≤ k`, and `V_{k+1}` encloses `{0, 2, 4, …, 2k}`.
pub fn canonical_monodromy(k: usize) -> Result<Factorization, PageError> {
    let page = Page::new(k)?;
    let mut curves = Vec::with_capacity(k + 2);

    let v0 = std::iter::once(0).chain((0..k).map(|h| 2 * h + 1));
    curves.push(CurveClass::standard(&page, v0)?);
    for h in 1..=k {
        curves.push(CurveClass::standard(&page, [2 * h - 1, 2 * h])?);
    }
    let vk1 = (0..=k).map(|h| 2 * h);
    curves.push(CurveClass::standard(&page, vk1)?);

    Factorization::new(page, curves)
}

/// The curve parallel to boundary component `label`.
///
/// Inner labels give single-hole curves; the outer label `2k+1` gives the
/// outer-parallel curve, which counts as enclosing every inner hole.
pub fn boundary_parallel_curve(page: &Page, label: usize) -> Result<CurveClass, PageError> {
    if label <= 2 * page.k() {
        CurveClass::standard(page, [label])
    } else if label == page.outer_label() {
        let holes: BTreeSet<usize> = (0..page.holes()).collect();
        CurveClass::with_word(page, holes.clone(), FreeWord::ascending(holes), true)
    } else {
        Err(PageError::LabelOutOfRange { label, max: page.outer_label() })
    }
}

// --- JSON factorization format -------------------------------------------
//
// {"k": 2, "curves": [{"holes": [1,2], "word": ["x1","x2"]}, ...]}
// Curve order in the array is left-to-right in product notation.

#[derive(Serialize, Deserialize)]
struct CurveJson {
    holes: Vec<usize>,
    word: FreeWord,
    #[serde(default, skip_serializing_if = "is_false")]
    outer_parallel: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize)]
struct FactorizationJson {
    k: usize,
    curves: Vec<CurveJson>,
}

impl Serialize for Factorization {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let doc = FactorizationJson {
            k: self.page.k(),
            curves: self
                .curves
                .iter()
                .map(|c| CurveJson {
                    holes: c.holes.iter().copied().collect(),
                    word: c.word.clone(),
                    outer_parallel: c.outer_parallel,
                })
                .collect(),
        };
        doc.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Factorization {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let doc = FactorizationJson::deserialize(deserializer)?;
        let page = Page::new(doc.k).map_err(D::Error::custom)?;
        let mut curves = Vec::with_capacity(doc.curves.len());
        for c in doc.curves {
            let holes: BTreeSet<usize> = c.holes.into_iter().collect();
            curves.push(
                CurveClass::with_word(&page, holes, c.word, c.outer_parallel)
                    .map_err(D::Error::custom)?,
            );
        }
        Factorization::new(page, curves).map_err(D::Error::custom)
    }
}
