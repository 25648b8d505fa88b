//! Points of the final coalgebra as infinite letter streams.
//!
//! A stream is never completed; it is only ever observed through its depth-`p`
//! truncations `θ_p`, which close with the distinguished point matching the
//! last letter. Consecutive truncations satisfy `d(θ_p, θ_q) ≤ 2^-p`, so a
//! distance computed at depth `p` is certified to within `2/2^p`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::address::{word_distance, AddressError, AddressWord};
use crate::alphabet::{Alphabet, Letter};
use crate::dyadic::Dyadic;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompletionError {
    #[error("truncation depth must be at least 1")]
    ZeroDepth,
    #[error("cannot parse stream `{text}`: {reason}")]
    Parse { text: String, reason: &'static str },
    #[error("stream generator failed at depth {depth}: {message}")]
    Generator { depth: usize, message: String },
    #[error(transparent)]
    Address(#[from] AddressError),
}

/// How a stream was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    EventuallyConstant,
    ExplicitListWithTail,
    CoalgebraGenerated,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::EventuallyConstant => "eventually-constant",
            Provenance::ExplicitListWithTail => "explicit-list-with-tail",
            Provenance::CoalgebraGenerated => "coalgebra-generated",
        })
    }
}

/// Produces the next letter of a generated stream.
pub type LetterStep = Box<dyn FnMut() -> Result<Letter, String> + Send>;

struct GeneratorState {
    letters: Vec<Letter>,
    step: LetterStep,
    failure: Option<CompletionError>,
}

struct Generated {
    label: String,
    state: Mutex<GeneratorState>,
}

impl Generated {
    /// Letter at 0-based position `i`, extending the cached prefix as needed.
    fn letter(&self, i: usize) -> Result<Letter, CompletionError> {
        let mut state = self.state.lock().unwrap_or_else(|e| e.into_inner());
        while state.letters.len() <= i {
            if let Some(err) = &state.failure {
                return Err(err.clone());
            }
            let depth = state.letters.len() + 1;
            match (state.step)() {
                Ok(m) => state.letters.push(m),
                Err(message) => {
                    let err = CompletionError::Generator { depth, message };
                    state.failure = Some(err.clone());
                    return Err(err);
                }
            }
        }
        Ok(state.letters[i])
    }
}

#[derive(Clone)]
enum Source {
    Periodic {
        prefix: Vec<Letter>,
        cycle: Vec<Letter>,
    },
    Generated {
        inner: Arc<Generated>,
        offset: usize,
    },
}

/// An infinite letter stream over one alphabet.
#[derive(Clone)]
pub struct CompletionPoint {
    alphabet: Alphabet,
    source: Source,
}

impl CompletionPoint {
    /// `prefix` followed by `cycle` repeated forever.
    pub fn periodic(
        alphabet: Alphabet,
        prefix: Vec<Letter>,
        cycle: Vec<Letter>,
    ) -> Result<Self, CompletionError> {
        if cycle.is_empty() {
            return Err(CompletionError::Parse {
                text: String::new(),
                reason: "the repeating tail must be non-empty",
            });
        }
        if let Some(&letter) = prefix
            .iter()
            .chain(&cycle)
            .find(|m| m.alphabet() != alphabet)
        {
            return Err(AddressError::LetterArity { letter, alphabet }.into());
        }
        Ok(CompletionPoint {
            alphabet,
            source: Source::Periodic { prefix, cycle },
        })
    }

    pub fn constant(m: Letter) -> Self {
        CompletionPoint {
            alphabet: m.alphabet(),
            source: Source::Periodic {
                prefix: Vec::new(),
                cycle: vec![m],
            },
        }
    }

    /// A stream whose letters come from repeated calls to `step`. Each letter
    /// is computed once and cached, so later queries are repeatable.
    pub fn generated(alphabet: Alphabet, label: impl Into<String>, step: LetterStep) -> Self {
        CompletionPoint {
            alphabet,
            source: Source::Generated {
                inner: Arc::new(Generated {
                    label: label.into(),
                    state: Mutex::new(GeneratorState {
                        letters: Vec::new(),
                        step,
                        failure: None,
                    }),
                }),
                offset: 0,
            },
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn provenance(&self) -> Provenance {
        match &self.source {
            Source::Periodic { cycle, .. } if cycle.len() == 1 => Provenance::EventuallyConstant,
            Source::Periodic { .. } => Provenance::ExplicitListWithTail,
            Source::Generated { .. } => Provenance::CoalgebraGenerated,
        }
    }

    /// The letter at 1-based depth `i`.
    pub fn letter_at(&self, i: usize) -> Result<Letter, CompletionError> {
        if i == 0 {
            return Err(CompletionError::ZeroDepth);
        }
        let m = match &self.source {
            Source::Periodic { prefix, cycle } => {
                let j = i - 1;
                if j < prefix.len() {
                    prefix[j]
                } else {
                    cycle[(j - prefix.len()) % cycle.len()]
                }
            }
            Source::Generated { inner, offset } => inner.letter(offset + i - 1)?,
        };
        if m.alphabet() != self.alphabet {
            return Err(AddressError::LetterArity {
                letter: m,
                alphabet: self.alphabet,
            }
            .into());
        }
        Ok(m)
    }

    /// The first `p` letters.
    pub fn prefix(&self, p: usize) -> Result<Vec<Letter>, CompletionError> {
        (1..=p).map(|i| self.letter_at(i)).collect()
    }

    /// Drops the head letter.
    pub fn shift(&self) -> CompletionPoint {
        let source = match &self.source {
            Source::Periodic { prefix, cycle } => {
                if prefix.is_empty() {
                    let mut cycle = cycle.clone();
                    cycle.rotate_left(1);
                    Source::Periodic {
                        prefix: Vec::new(),
                        cycle,
                    }
                } else {
                    Source::Periodic {
                        prefix: prefix[1..].to_vec(),
                        cycle: cycle.clone(),
                    }
                }
            }
            Source::Generated { inner, offset } => Source::Generated {
                inner: Arc::clone(inner),
                offset: offset + 1,
            },
        };
        CompletionPoint {
            alphabet: self.alphabet,
            source,
        }
    }

    /// Exact limit of the dyadic folds of the truncations, for bi-pointed
    /// streams given by a prefix and a repeating tail. The limit can be a
    /// non-dyadic rational, e.g. `1/3` for `(lr)*`.
    pub fn periodic_bi_limit(&self) -> Option<BigRational> {
        let Source::Periodic { prefix, cycle } = &self.source else {
            return None;
        };
        if self.alphabet != Alphabet::Bi {
            return None;
        }
        let bit = |m: &Letter| BigInt::from(u8::from(*m == Letter::R));
        // the tail is the fixed point of x ↦ (x + A) / 2^k
        let k = cycle.len();
        let a = cycle
            .iter()
            .fold(BigInt::zero(), |acc, m| (acc << 1usize) + bit(m));
        let denom = (BigInt::one() << k) - BigInt::one();
        let two = BigRational::from_integer(BigInt::from(2));
        Some(
            prefix
                .iter()
                .rev()
                .fold(BigRational::new(a, denom), |x, m| {
                    (x + BigRational::from_integer(bit(m))) / two.clone()
                }),
        )
    }
}

impl fmt::Debug for CompletionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CompletionPoint({self})")
    }
}

impl fmt::Display for CompletionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.source {
            Source::Periodic { prefix, cycle } => {
                for m in prefix {
                    write!(f, "{m}")?;
                }
                f.write_str("(")?;
                for m in cycle {
                    write!(f, "{m}")?;
                }
                f.write_str(")*")
            }
            Source::Generated { inner, offset } => {
                f.write_str(&inner.label)?;
                if *offset > 0 {
                    write!(f, "+{offset}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for CompletionPoint {
    type Err = CompletionError;

    /// Parses `llr(r)*`: a finite prefix, then a parenthesised tail repeated
    /// forever.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |reason| CompletionError::Parse {
            text: text.to_string(),
            reason,
        };
        let body = text
            .strip_suffix(")*")
            .ok_or_else(|| err("expected a `(…)*` tail"))?;
        let (prefix, cycle) = body
            .split_once('(')
            .ok_or_else(|| err("expected a `(…)*` tail"))?;
        let letters = |s: &str| -> Result<Vec<Letter>, CompletionError> {
            s.chars()
                .map(|c| Letter::from_symbol(c).ok_or_else(|| err("unknown letter")))
                .collect()
        };
        let prefix = letters(prefix)?;
        let cycle = letters(cycle)?;
        let first = cycle
            .first()
            .ok_or_else(|| err("the repeating tail must be non-empty"))?;
        let alphabet = first.alphabet();
        if prefix
            .iter()
            .chain(&cycle)
            .any(|m| m.alphabet() != alphabet)
        {
            return Err(err("letters from both alphabets"));
        }
        CompletionPoint::periodic(alphabet, prefix, cycle)
    }
}

/// `θ_p`: the first `p` letters closed with the base matching letter `p`.
pub fn truncate(s: &CompletionPoint, p: usize) -> Result<AddressWord, CompletionError> {
    if p == 0 {
        return Err(CompletionError::ZeroDepth);
    }
    Ok(AddressWord::closed(s.alphabet, s.prefix(p)?)?)
}

/// The structure map: head letter and the shifted stream.
pub fn psi(s: &CompletionPoint) -> Result<(Letter, CompletionPoint), CompletionError> {
    Ok((s.letter_at(1)?, s.shift()))
}

/// A closed interval certified to contain a distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl DistanceInterval {
    pub fn contains(&self, d: &Dyadic) -> bool {
        &self.lo <= d && d <= &self.hi
    }

    pub fn contains_ratio(&self, d: &BigRational) -> bool {
        &self.lo.to_ratio() <= d && d <= &self.hi.to_ratio()
    }

    pub fn width(&self) -> Dyadic {
        &self.hi - &self.lo
    }

    /// The interval widened by `r` on both sides, without clamping.
    pub fn widened(&self, r: &Dyadic) -> DistanceInterval {
        DistanceInterval {
            lo: &self.lo - r,
            hi: &self.hi + r,
        }
    }

    pub fn is_within(&self, outer: &DistanceInterval) -> bool {
        outer.lo <= self.lo && self.hi <= outer.hi
    }
}

impl fmt::Display for DistanceInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Distance between two streams from their depth-`p` truncations. Each
/// truncation is within `2^-p` of its limit, so the true distance lies within
/// `2/2^p` of the computed center; the interval is clipped to `[0, 1]`.
pub fn completion_distance(
    s: &CompletionPoint,
    t: &CompletionPoint,
    p: usize,
) -> Result<DistanceInterval, CompletionError> {
    if s.alphabet != t.alphabet {
        return Err(AddressError::AlphabetMismatch(s.alphabet, t.alphabet).into());
    }
    let center = word_distance(&truncate(s, p)?, &truncate(t, p)?)?;
    let radius = Dyadic::pow2_neg(p as u32 - 1);
    Ok(DistanceInterval {
        lo: (&center - &radius).max(Dyadic::zero()),
        hi: (&center + &radius).min(Dyadic::one()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::address::{embed, fold_dyadic};

    fn s(text: &str) -> CompletionPoint {
        text.parse().unwrap()
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(s("llr(r)*").to_string(), "llr(r)*");
        assert_eq!(s("(a)*").provenance(), Provenance::EventuallyConstant);
        assert_eq!(s("(lr)*").provenance(), Provenance::ExplicitListWithTail);
        for bad in ["llr", "l(r)", "()*", "l(x)*", "a(l)*"] {
            assert!(bad.parse::<CompletionPoint>().is_err(), "{bad}");
        }
    }

    #[test]
    fn truncations() {
        assert_eq!(truncate(&s("(a)*"), 3).unwrap().to_string(), "aaa.T");
        let t = s("ll(r)*");
        assert_eq!(truncate(&t, 2).unwrap().to_string(), "ll.B");
        assert_eq!(truncate(&t, 4).unwrap().to_string(), "llrr.T");
        let top = truncate(&s("(r)*"), 7).unwrap();
        assert_eq!(fold_dyadic(&top).unwrap(), Dyadic::one());
        assert_eq!(truncate(&t, 0), Err(CompletionError::ZeroDepth));
    }

    #[test]
    fn shift_matches_tail() {
        for text in ["llr(r)*", "(abc)*", "b(ca)*", "(lr)*"] {
            let x = s(text);
            let (head, rest) = psi(&x).unwrap();
            assert_eq!(head, x.letter_at(1).unwrap());
            for p in 1..=10 {
                let shifted = truncate(&rest, p).unwrap();
                let tail = truncate(&x, p + 1).unwrap().tail().unwrap();
                assert!(word_distance(&shifted, &tail).unwrap().is_zero());
            }
        }
        assert_eq!(s("(a)*").shift().to_string(), "(a)*");
        assert_eq!(s("l(r)*").shift().to_string(), "(r)*");
    }

    #[test]
    fn generated_streams_cache_and_shift() {
        let mut n = 0u32;
        let x = CompletionPoint::generated(
            Alphabet::Bi,
            "alt",
            Box::new(move || {
                n += 1;
                Ok(if n % 2 == 1 { Letter::L } else { Letter::R })
            }),
        );
        assert_eq!(x.letter_at(3).unwrap(), Letter::L);
        assert_eq!(x.letter_at(2).unwrap(), Letter::R);
        assert_eq!(x.letter_at(3).unwrap(), Letter::L);
        let y = x.shift();
        assert_eq!(y.letter_at(1).unwrap(), Letter::R);
        assert_eq!(y.to_string(), "alt+1");
        assert_eq!(x.provenance(), Provenance::CoalgebraGenerated);
    }

    #[test]
    fn failing_generator_reports_depth() {
        let x =
            CompletionPoint::generated(Alphabet::Tri, "bad", Box::new(|| Err("boom".to_string())));
        assert!(matches!(
            x.letter_at(1),
            Err(CompletionError::Generator { depth: 1, .. })
        ));
    }

    #[test]
    fn distance_intervals() {
        let a = s("(a)*");
        for p in 1..=6 {
            let iv = completion_distance(&a, &a, p).unwrap();
            assert_eq!(iv.lo, Dyadic::zero());
            assert_eq!(iv.hi, Dyadic::pow2_neg(p as u32 - 1).min(Dyadic::one()));
        }
        let iv = completion_distance(&s("(l)*"), &s("(r)*"), 4).unwrap();
        assert!(iv.contains(&Dyadic::one()));
        assert_eq!(iv.hi, Dyadic::one());

        let iv = completion_distance(&s("ll(r)*"), &s("(l)*"), 10).unwrap();
        assert!(iv.contains(&"1/2^2".parse().unwrap()));
        assert!(iv.width() <= Dyadic::pow2_neg(8));
        assert!(completion_distance(&s("(l)*"), &s("(a)*"), 3).is_err());
    }

    #[test]
    fn periodic_limits() {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert_eq!(
            s("(rl)*").periodic_bi_limit().unwrap(),
            third * BigInt::from(2)
        );
        assert_eq!(
            s("ll(r)*").periodic_bi_limit().unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(4))
        );
        assert!(s("(a)*").periodic_bi_limit().is_none());
    }

    #[test]
    fn cauchy_rate_on_periodic_streams() {
        for text in ["llr(r)*", "(lr)*", "(abc)*", "c(ab)*"] {
            let x = s(text);
            for p in 1..=12 {
                let tp = truncate(&x, p).unwrap();
                for q in p + 1..=12 {
                    let tq = truncate(&x, q).unwrap();
                    let d = word_distance(&embed(&tp, q).unwrap(), &tq).unwrap();
                    assert!(d <= Dyadic::pow2_neg(p as u32), "{text} {p} {q}");
                }
            }
        }
    }
}
