//! Mapping classes of the holed disk as free-group automorphisms with
//! framing data.
//!
//! A mapping class rel boundary acts on `π_1` of the page, free on one loop
//! per inner hole, and the action is faithful on the braid-like part. Twists
//! along inner-boundary-parallel curves act trivially on `π_1`, so each
//! representation also carries a framing vector counting, per hole, the
//! twists enclosing it. Comparison uses the pair (automorphism, framing);
//! completeness of this invariant is an assumption validated by the oracle
//! fixtures, not proven here.
//!
//! # Twist action
//!
//! A standard-position curve over a hole set `S` (word = ascending product
//! `W` of the enclosed generators) twists as follows:
//!
//! * `x_s ↦ W · x_s · W⁻¹` for `s ∈ S`;
//! * `x_q ↦ C_q · x_q · C_q⁻¹` for a hole `q ∉ S` inside the span of `S`,
//!   where `C_q = [P_q, S_q]` is the commutator of the products of enclosed
//!   generators below and above `q` — the curve has to travel past hole `q`
//!   on the basepoint side, so the loop around `q` crosses it twice;
//! * `x_q ↦ x_q` outside the span.
//!
//! This action fixes the outer boundary word `x_0 x_1 ⋯ x_{2k}` exactly, as
//! any mapping class rel boundary must. Curves produced by Hurwitz moves are
//! generally not in standard position; they carry their twist action with
//! them instead of recomputing it from the word.

use std::fmt;
use thiserror::Error;

use crate::page::{CurveClass, Factorization, Page, PageError};
use crate::word::{FreeWord, DEFAULT_WORD_CAP};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum McgError {
    #[error("mapping classes live on different pages: k = {0} vs k = {1}")]
    KMismatch(usize, usize),
    #[error("word length exceeded the cap of {cap} letters")]
    WordTooLong { cap: usize },
    #[error("curve word `{word}` is not in standard position and carries no twist data; \
             only ascending plain words can be re-twisted from serialized form")]
    UnsupportedWord { word: String },
    #[error("factor index {index} out of range for a factorization of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error(transparent)]
    Page(#[from] PageError),
}

/// A free-group endomorphism (images of the hole generators) plus a framing
/// vector. Values built by this module are automorphisms by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingClassRep {
    k: usize,
    images: Vec<FreeWord>,
    framing: Vec<i64>,
}

impl MappingClassRep {
    pub fn identity(k: usize) -> Self {
        let n = 2 * k + 1;
        MappingClassRep {
            k,
            images: (0..n).map(FreeWord::generator).collect(),
            framing: vec![0; n],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn framing(&self) -> &[i64] {
        &self.framing
    }

    pub fn is_identity(&self) -> bool {
        self.framing.iter().all(|&f| f == 0)
            && self.images.iter().enumerate().all(|(i, w)| *w == FreeWord::generator(i))
    }

    /// Image of a word under the automorphism.
    pub fn apply(&self, w: &FreeWord) -> Result<FreeWord, McgError> {
        self.apply_with_cap(w, DEFAULT_WORD_CAP)
    }

    pub fn apply_with_cap(&self, w: &FreeWord, cap: usize) -> Result<FreeWord, McgError> {
        w.substitute(&self.images, cap)
    }

    /// True iff the outer boundary word `x_0 ⋯ x_{2k}` is fixed. Every
    /// composite of twists satisfies this; it is a cheap sanity predicate.
    pub fn fixes_boundary_word(&self) -> bool {
        let boundary = FreeWord::ascending(0..2 * self.k + 1);
        self.apply(&boundary).map(|img| img == boundary).unwrap_or(false)
    }

    /// JSON value with generator images in dotted string form.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.k,
            "images": self.images.iter().map(|w| w.dotted()).collect::<Vec<_>>(),
            "framing": self.framing,
        })
    }
}

impl fmt::Display for MappingClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "framing {:?}", self.framing)?;
        for (i, w) in self.images.iter().enumerate() {
            writeln!(f, "x{i} -> {}", w.dotted())?;
        }
        Ok(())
    }
}

/// Twist action for a standard-position curve over the given hole set, with
/// `sign = ±1` selecting the right- or left-handed twist.
fn standard_twist_rep(k: usize, hole_set: &std::collections::BTreeSet<usize>, sign: i64) -> MappingClassRep {
    let n = 2 * k + 1;
    let holes: Vec<usize> = hole_set.iter().copied().collect();
    let w = FreeWord::ascending(holes.iter().copied());
    let conj = if sign > 0 { w.clone() } else { w.inverse() };

    let lo = *holes.first().expect("curve encloses at least one hole");
    let hi = *holes.last().expect("curve encloses at least one hole");

    let mut images = Vec::with_capacity(n);
    for q in 0..n {
        let x = FreeWord::generator(q);
        if hole_set.contains(&q) {
            images.push(conj.conjugate(&x));
        } else if lo < q && q < hi {
            let below = FreeWord::ascending(holes.iter().copied().filter(|&s| s < q));
            let above = FreeWord::ascending(holes.iter().copied().filter(|&s| s > q));
            let c = below.commutator(&above);
            let c = if sign > 0 { c } else { w.inverse().conjugate(&c.inverse()) };
            images.push(c.conjugate(&x));
        } else {
            images.push(x);
        }
    }

    let mut framing = vec![0i64; n];
    for &s in &holes {
        framing[s] = sign;
    }
    MappingClassRep { k, images, framing }
}

/// Materializes a twist word by composing its primitive standard twists.
fn materialize(k: usize, word: &crate::page::TwistWord, cap: usize) -> Result<MappingClassRep, McgError> {
    let mut acc = MappingClassRep::identity(k);
    for p in word.factors() {
        let sign = if p.inverse { -1 } else { 1 };
        let rep = standard_twist_rep(k, &p.holes, sign);
        acc = compose_with_cap(&acc, &rep, cap)?;
    }
    Ok(acc)
}

/// The positive (right-handed) Dehn twist along a curve.
///
/// Standard-position curves are twisted from their word; curves moved by
/// [`hurwitz_move`] carry their twist as a word in standard twists, which is
/// materialized here. Any other word is rejected: a serialized moved curve
/// loses its twist data and cannot be re-twisted from the word alone.
pub fn twist(page: &Page, curve: &CurveClass) -> Result<MappingClassRep, McgError> {
    match curve.twist_word() {
        Some(w) => materialize(page.k(), &w, DEFAULT_WORD_CAP),
        None => Err(McgError::UnsupportedWord { word: curve.word().dotted() }),
    }
}

/// The left-handed twist along the same curve: framing `−indicator`, word
/// conjugation inverted.
pub fn twist_inverse(page: &Page, curve: &CurveClass) -> Result<MappingClassRep, McgError> {
    match curve.twist_word() {
        Some(w) => materialize(page.k(), &w.inverse(), DEFAULT_WORD_CAP),
        None => Err(McgError::UnsupportedWord { word: curve.word().dotted() }),
    }
}

/// Functional composition `a ∘ b` (apply `b` first). Framing vectors add.
pub fn compose(a: &MappingClassRep, b: &MappingClassRep) -> Result<MappingClassRep, McgError> {
    compose_with_cap(a, b, DEFAULT_WORD_CAP)
}

pub fn compose_with_cap(
    a: &MappingClassRep,
    b: &MappingClassRep,
    cap: usize,
) -> Result<MappingClassRep, McgError> {
    if a.k != b.k {
        return Err(McgError::KMismatch(a.k, b.k));
    }
    let images = b
        .images
        .iter()
        .map(|w| w.substitute(&a.images, cap))
        .collect::<Result<Vec<_>, _>>()?;
    let framing = a.framing.iter().zip(&b.framing).map(|(x, y)| x + y).collect();
    Ok(MappingClassRep { k: a.k, images, framing })
}

/// Left-to-right composition of the twists of a factorization; the rightmost
/// curve's twist is applied first. The framing equals the per-hole incidence
/// counts of the factorization.
///
/// The twist words of all factors are concatenated and reduced before any
/// automorphism is materialized. For factorizations produced by Hurwitz
/// moves the conjugations telescope away entirely, so the realized images
/// stay small even when individual moved twists would be enormous.
pub fn realize(f: &Factorization) -> Result<MappingClassRep, McgError> {
    realize_with_cap(f, DEFAULT_WORD_CAP)
}

pub fn realize_with_cap(f: &Factorization, cap: usize) -> Result<MappingClassRep, McgError> {
    let mut word = crate::page::TwistWord::default();
    for curve in f.curves() {
        let w = curve
            .twist_word()
            .ok_or_else(|| McgError::UnsupportedWord { word: curve.word().dotted() })?;
        word = word.concat(&w);
    }
    materialize(f.page().k(), &word, cap)
}

/// True iff images agree letter-for-letter after free reduction and the
/// framing vectors agree.
pub fn equal(a: &MappingClassRep, b: &MappingClassRep) -> Result<bool, McgError> {
    if a.k != b.k {
        return Err(McgError::KMismatch(a.k, b.k));
    }
    Ok(a.images == b.images && a.framing == b.framing)
}

/// Elementary transformation of adjacent factors: `(a, b) ↦ (b, b⁻¹(a))`.
///
/// The moved curve keeps the hole set of `a`; its word is the image of `a`'s
/// word under the inverse twist of `b`, and its twist is the conjugate
/// `T_b⁻¹ ∘ T_a ∘ T_b`, so `realize` is unchanged.
pub fn hurwitz_move(f: &Factorization, i: usize) -> Result<Factorization, McgError> {
    hurwitz_move_with_cap(f, i, DEFAULT_WORD_CAP)
}

pub fn hurwitz_move_with_cap(
    f: &Factorization,
    i: usize,
    cap: usize,
) -> Result<Factorization, McgError> {
    if f.len() < 2 || i >= f.len() - 1 {
        return Err(McgError::IndexOutOfRange { index: i, len: f.len() });
    }
    let page = *f.page();
    let a = &f.curves()[i];
    let b = &f.curves()[i + 1];

    let a_word = a
        .twist_word()
        .ok_or_else(|| McgError::UnsupportedWord { word: a.word().dotted() })?;
    let b_word = b
        .twist_word()
        .ok_or_else(|| McgError::UnsupportedWord { word: b.word().dotted() })?;

    // based word of the moved curve: push a's word through the inverse twist
    // of b, one standard twist at a time. T_b applies its rightmost factor
    // first, so T_b⁻¹ applies the inverse of b's leftmost factor first.
    let mut word = a.word().clone();
    for p in b_word.factors() {
        let sign = if p.inverse { 1 } else { -1 };
        let rep = standard_twist_rep(page.k(), &p.holes, sign);
        word = rep.apply_with_cap(&word, cap)?;
    }

    let moved = CurveClass::with_word(&page, a.holes().clone(), word, a.is_outer_parallel())?
        .carrying_twist(crate::page::TwistWord::conjugated_by(&a_word, &b_word));

    let mut curves = f.curves().to_vec();
    curves[i] = b.clone();
    curves[i + 1] = moved;
    Ok(Factorization::new(page, curves)?)
}
