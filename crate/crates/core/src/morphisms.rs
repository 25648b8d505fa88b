//! Mediating morphisms in both directions.
//!
//! A coalgebra `e: X → M ⊗ X` is iterated to produce the letter stream of its
//! image in the final coalgebra. An algebra `e: M ⊗ X → X` is folded over an
//! address word, innermost letter first, to evaluate the unique map out of the
//! initial algebra.

use std::fmt;

use thiserror::Error;

use crate::address::{word_distance, AddressError, AddressWord};
use crate::alphabet::{Alphabet, Base, Letter};
use crate::completion::{psi, truncate, CompletionError, CompletionPoint};
use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error("{name}: point {point} is outside the carrier")]
    OutsideCarrier { name: &'static str, point: String },
    #[error("{name}: step produced letter `{letter}` outside the {alphabet} alphabet")]
    LetterOutsideAlphabet {
        name: &'static str,
        letter: Letter,
        alphabet: Alphabet,
    },
    #[error("{name}: step returned no branch for {point}")]
    NoBranch { name: &'static str, point: String },
    #[error("iteration depth must be at least {min}, got {depth}")]
    Depth { depth: usize, min: usize },
    #[error("{name}: the branches of e({point}) are not glued to each other")]
    OverlapMismatch { name: &'static str, point: String },
    #[error("{name}: op disagrees on the glued pair {m1}⊗{b1} = {m2}⊗{b2}")]
    GluingDisagreement {
        name: &'static str,
        m1: Letter,
        b1: Base,
        m2: Letter,
        b2: Base,
    },
    #[error("{name}: op does not fix the distinguished point {base}")]
    DistinguishedNotPreserved { name: &'static str, base: Base },
    #[error("{name} works on {expected} words, got a {found} word")]
    AlphabetMismatch {
        name: &'static str,
        expected: Alphabet,
        found: Alphabet,
    },
    #[error(transparent)]
    Address(#[from] AddressError),
    #[error(transparent)]
    Completion(#[from] CompletionError),
}

/// A coalgebra `e: X → M ⊗ X` with an exactly represented carrier.
pub trait Coalgebra {
    type Point: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn name(&self) -> &'static str;

    fn alphabet(&self) -> Alphabet;

    fn distinguished(&self, base: Base) -> Self::Point;

    /// Every representation of `e(x)`, in a fixed order and without
    /// duplicates. Points on an overlap have more than one.
    fn branches(&self, x: &Self::Point) -> Result<Vec<(Letter, Self::Point)>, MorphismError>;

    /// The first branch.
    fn step(&self, x: &Self::Point) -> Result<(Letter, Self::Point), MorphismError> {
        let mut all = self.branches(x)?;
        if all.is_empty() {
            return Err(MorphismError::NoBranch {
                name: self.name(),
                point: x.to_string(),
            });
        }
        let (m, y) = all.swap_remove(0);
        check_coalgebra_letter(self, m)?;
        Ok((m, y))
    }
}

fn check_coalgebra_letter<C: Coalgebra + ?Sized>(c: &C, m: Letter) -> Result<(), MorphismError> {
    if m.alphabet() == c.alphabet() {
        Ok(())
    } else {
        Err(MorphismError::LetterOutsideAlphabet {
            name: c.name(),
            letter: m,
            alphabet: c.alphabet(),
        })
    }
}

/// An algebra `e: M ⊗ X → X`.
pub trait Algebra {
    type Point: Clone + PartialEq + fmt::Debug + fmt::Display;

    fn name(&self) -> &'static str;

    fn alphabet(&self) -> Alphabet;

    fn distinguished(&self, base: Base) -> Self::Point;

    fn op(&self, m: Letter, x: &Self::Point) -> Self::Point;
}

/// Checks that each distinguished point is sent to itself by one step, as in
/// `e(⊥) = l ⊗ ⊥`.
pub fn validate_coalgebra<C: Coalgebra>(c: &C) -> Result<(), MorphismError> {
    for &base in c.alphabet().bases() {
        let x = c.distinguished(base);
        let fixed = c
            .branches(&x)?
            .into_iter()
            .any(|(m, y)| m == base.extension_letter() && y == x);
        if !fixed {
            return Err(MorphismError::DistinguishedNotPreserved {
                name: c.name(),
                base,
            });
        }
    }
    Ok(())
}

/// Checks that all branches of `e(x)` name the same point of `M ⊗ X`: two
/// branches with different letters must sit on the vertex those copies share.
pub fn validate_overlap<C: Coalgebra>(c: &C, x: &C::Point) -> Result<(), MorphismError> {
    let all = c.branches(x)?;
    for (i, (m, y)) in all.iter().enumerate() {
        check_coalgebra_letter(c, *m)?;
        for (n, z) in &all[i + 1..] {
            let glued = m != n
                && c.alphabet()
                    .shared_vertex(*m, *n)
                    .is_some_and(|(u, v)| *y == c.distinguished(u) && *z == c.distinguished(v));
            if !glued {
                return Err(MorphismError::OverlapMismatch {
                    name: c.name(),
                    point: x.to_string(),
                });
            }
        }
    }
    Ok(())
}

/// The letters `m₁…m_p` and the residual carrier point `x_p`.
pub fn iterate_unbarred<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    p: usize,
) -> Result<(Vec<Letter>, C::Point), MorphismError> {
    let mut letters = Vec::with_capacity(p);
    let mut cur = x.clone();
    for _ in 0..p {
        let (m, next) = c.step(&cur)?;
        letters.push(m);
        cur = next;
    }
    Ok((letters, cur))
}

/// `θ_p`: `p` steps of `c` from `x`, closed with the base matching the last
/// letter.
pub fn coalgebra_iterate<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    p: usize,
) -> Result<AddressWord, MorphismError> {
    if p == 0 {
        return Err(MorphismError::Depth { depth: 0, min: 1 });
    }
    let (letters, _) = iterate_unbarred(c, x, p)?;
    Ok(AddressWord::closed(c.alphabet(), letters)?)
}

/// Letters emitted so far and the carrier point reached.
pub type Iterate<P> = (Vec<Letter>, P);

/// The unbarred iterates `χ_p = m₁⋯m_p ⊗ x_p` reachable through every
/// sequence of branch choices, without duplicates.
pub fn branch_iterates<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    p: usize,
) -> Result<Vec<Iterate<C::Point>>, MorphismError> {
    let mut frontier: Vec<Iterate<C::Point>> = vec![(Vec::new(), x.clone())];
    for _ in 0..p {
        let mut next: Vec<Iterate<C::Point>> = Vec::new();
        for (letters, point) in &frontier {
            for (m, y) in c.branches(point)? {
                check_coalgebra_letter(c, m)?;
                let mut extended = letters.clone();
                extended.push(m);
                let state = (extended, y);
                if !next.contains(&state) {
                    next.push(state);
                }
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

/// The truncations `θ_p` of every branch iterate, without duplicates.
///
/// Branches that split at depth `p` itself can give different truncations
/// (the closing base follows the letter, not the residual point); from depth
/// `p + 1` on they agree again.
pub fn branch_words<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    p: usize,
) -> Result<Vec<AddressWord>, MorphismError> {
    if p == 0 {
        return Err(MorphismError::Depth { depth: 0, min: 1 });
    }
    let mut words = Vec::new();
    for (letters, _) in branch_iterates(c, x, p)? {
        let w = AddressWord::closed(c.alphabet(), letters)?;
        if !words.contains(&w) {
            words.push(w);
        }
    }
    Ok(words)
}

/// The first depth `q ≤ max_depth` from which every later truncation is
/// equivalent to `θ_q`, together with `θ_q`.
///
/// This happens as soon as the residual point is fixed by `e` with the letter
/// just emitted: the rest of the stream repeats that letter, and
/// `m ⊗ x̄ = x̄` for the base matching `m`.
pub fn stable_truncation<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    max_depth: usize,
) -> Result<Option<(usize, AddressWord)>, MorphismError> {
    let mut letters = Vec::new();
    let mut cur = x.clone();
    for q in 1..=max_depth {
        let (m, next) = c.step(&cur)?;
        letters.push(m);
        let (m2, after) = c.step(&next)?;
        if m2 == m && after == next {
            return Ok(Some((q, AddressWord::closed(c.alphabet(), letters)?)));
        }
        cur = next;
    }
    Ok(None)
}

/// The image of `x` in the final coalgebra, as a lazily generated stream.
pub fn mediating_final<C>(c: &C, x: &C::Point) -> CompletionPoint
where
    C: Coalgebra + Clone + Send + 'static,
    C::Point: Send + 'static,
{
    let label = format!("{}({})", c.name(), x);
    let coalgebra = c.clone();
    let mut cur = x.clone();
    CompletionPoint::generated(
        c.alphabet(),
        label,
        Box::new(move || {
            let (m, next) = coalgebra.step(&cur).map_err(|e| e.to_string())?;
            cur = next;
            Ok(m)
        }),
    )
}

/// Defect of the square `(M ⊗ f) ∘ e = ψ ∘ f` at depth `p`.
///
/// The left side takes each branch `m ⊗ x'` of `e(x)` and prefixes `m` to the
/// depth-`p − 1` truncation of `f(x')`; the right side applies `ψ` to `f(x)`
/// and truncates the same way. The result is the largest word distance over
/// the branches.
pub fn check_coalgebra_square<C>(c: &C, x: &C::Point, p: usize) -> Result<Dyadic, MorphismError>
where
    C: Coalgebra + Clone + Send + 'static,
    C::Point: Send + 'static,
{
    if p < 2 {
        return Err(MorphismError::Depth { depth: p, min: 2 });
    }
    let (head, rest) = psi(&mediating_final(c, x))?;
    let right = truncate(&rest, p - 1)?.prepend(head)?;
    let mut worst = Dyadic::zero();
    for (m, y) in c.branches(x)? {
        check_coalgebra_letter(c, m)?;
        let left = truncate(&mediating_final(c, &y), p - 1)?.prepend(m)?;
        worst = worst.max(word_distance(&left, &right)?);
    }
    Ok(worst)
}

/// Checks that `op` agrees on both sides of every gluing and fixes the
/// distinguished points.
pub fn validate_algebra<A: Algebra>(a: &A) -> Result<(), MorphismError> {
    for g in a.alphabet().gluings() {
        let (m1, b1) = g.left;
        let (m2, b2) = g.right;
        if a.op(m1, &a.distinguished(b1)) != a.op(m2, &a.distinguished(b2)) {
            return Err(MorphismError::GluingDisagreement {
                name: a.name(),
                m1,
                b1,
                m2,
                b2,
            });
        }
    }
    for &base in a.alphabet().bases() {
        let x = a.distinguished(base);
        if a.op(base.extension_letter(), &x) != x {
            return Err(MorphismError::DistinguishedNotPreserved {
                name: a.name(),
                base,
            });
        }
    }
    Ok(())
}

/// Evaluates the mediating map out of the initial algebra on `w`:
/// `x_k = base`, then `x_{j−1} = op(m_j, x_j)`.
pub fn algebra_fold<A: Algebra>(a: &A, w: &AddressWord) -> Result<A::Point, MorphismError> {
    if w.alphabet() != a.alphabet() {
        return Err(MorphismError::AlphabetMismatch {
            name: a.name(),
            expected: a.alphabet(),
            found: w.alphabet(),
        });
    }
    validate_algebra(a)?;
    Ok(w.letters()
        .iter()
        .rev()
        .fold(a.distinguished(w.base()), |x, &m| a.op(m, &x)))
}

/// Whether `fold(m · w) = op(m, fold(w))`.
pub fn check_algebra_square<A: Algebra>(
    a: &A,
    m: Letter,
    w: &AddressWord,
) -> Result<bool, MorphismError> {
    let lhs = algebra_fold(a, &w.prepend(m)?)?;
    let rhs = a.op(m, &algebra_fold(a, w)?);
    Ok(lhs == rhs)
}

/// The two-point bi-pointed algebra sending everything to `⊥` except `r ⊗ ⊤`.
#[derive(Debug, Clone, Copy, Default)]
pub struct BipAlg;

impl Algebra for BipAlg {
    type Point = Base;

    fn name(&self) -> &'static str {
        "bip-alg"
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Bi
    }

    fn distinguished(&self, base: Base) -> Base {
        base
    }

    fn op(&self, m: Letter, x: &Base) -> Base {
        if m == Letter::R && *x == Base::Top {
            Base::Top
        } else {
            Base::Bot
        }
    }
}

/// The three-point tri-pointed algebra fixing `a ⊗ T` and `c ⊗ R` and sending
/// everything else to `L`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TripAlg;

impl Algebra for TripAlg {
    type Point = Base;

    fn name(&self) -> &'static str {
        "trip-alg"
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Tri
    }

    fn distinguished(&self, base: Base) -> Base {
        base
    }

    fn op(&self, m: Letter, x: &Base) -> Base {
        match (m, x) {
            (Letter::A, Base::T) => Base::T,
            (Letter::C, Base::R) => Base::R,
            _ => Base::L,
        }
    }
}

/// The dyadic rationals with `l ⊗ x = x/2` and `r ⊗ x = (x+1)/2`: the initial
/// algebra itself, so folding reproduces [`crate::address::fold_dyadic`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DyadicAlg;

impl Algebra for DyadicAlg {
    type Point = Dyadic;

    fn name(&self) -> &'static str {
        "dyadic-alg"
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Bi
    }

    fn distinguished(&self, base: Base) -> Dyadic {
        if base == Base::Top {
            Dyadic::one()
        } else {
            Dyadic::zero()
        }
    }

    fn op(&self, m: Letter, x: &Dyadic) -> Dyadic {
        match m {
            Letter::L => x.half(),
            _ => (x + &Dyadic::one()).half(),
        }
    }
}

pub(crate) fn check_unit(name: &'static str, x: &Dyadic) -> Result<(), MorphismError> {
    if x.is_negative() || *x > Dyadic::one() {
        Err(MorphismError::OutsideCarrier {
            name,
            point: x.to_string(),
        })
    } else {
        Ok(())
    }
}

/// Freyd's structure on `[0, 1]`: `l ⊗ 2x` on the lower half and
/// `r ⊗ (2x − 1)` on the upper half.
#[derive(Debug, Clone, Copy, Default)]
pub struct FreydI;

impl Coalgebra for FreydI {
    type Point = Dyadic;

    fn name(&self) -> &'static str {
        "freyd-i"
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Bi
    }

    fn distinguished(&self, base: Base) -> Dyadic {
        DyadicAlg.distinguished(base)
    }

    fn branches(&self, x: &Dyadic) -> Result<Vec<(Letter, Dyadic)>, MorphismError> {
        check_unit(self.name(), x)?;
        let half = Dyadic::new(1, 1);
        let doubled = x.scale_pow2(1);
        let mut out = Vec::with_capacity(2);
        if *x <= half {
            out.push((Letter::L, doubled.clone()));
        }
        if *x >= half {
            out.push((Letter::R, &doubled - &Dyadic::one()));
        }
        Ok(out)
    }
}
