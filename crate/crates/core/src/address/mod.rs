//! Address words: points of the finite approximants `Mᵏ ⊗ I` and of their
//! colimit.
//!
//! A word `m₁⋯m_k.d` names the point `m₁ ⊗ ⋯ ⊗ m_k ⊗ d` where `d` is a
//! distinguished point of the initial object. Distances are computed exactly
//! by peeling off the common prefix (each shared letter halves the distance)
//! and applying the cross-copy formula at the first disagreement. That formula
//! needs only the distances from each remaining suffix to the distinguished
//! points, which are accumulated from the base outwards in one pass.

mod oracle;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::alphabet::{Alphabet, Base, Letter};
use crate::dyadic::Dyadic;
use crate::tensor::{cross_distance, GluingTable};

pub use oracle::{oracle_distance_table, OracleTable, MAX_ORACLE_DEPTH_BI, MAX_ORACLE_DEPTH_TRI};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AddressError {
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("letter `{letter}` is not in the {alphabet} alphabet")]
    LetterArity { letter: Letter, alphabet: Alphabet },
    #[error("base `{base}` is not a {alphabet} symbol")]
    BaseArity { base: Base, alphabet: Alphabet },
    #[error("cannot parse word `{word}`: {reason} (token `{token}`)")]
    Parse {
        word: String,
        token: String,
        reason: &'static str,
    },
    #[error("an empty letter sequence has no closing base")]
    NothingToClose,
    #[error("word `{0}` could belong to either alphabet")]
    Ambiguous(String),
    #[error("cannot embed a depth-{len} word at depth {depth}")]
    EmbedDepth { len: usize, depth: usize },
    #[error("{op} is only defined for {expected} words")]
    WrongAlphabet {
        op: &'static str,
        expected: Alphabet,
    },
    #[error("oracle depth {depth} exceeds the cap {cap} for {alphabet} words")]
    OracleDepth {
        alphabet: Alphabet,
        depth: usize,
        cap: usize,
    },
}

/// A point of `Mᵏ ⊗ I`: letters `m₁⋯m_k` followed by a base symbol.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AddressWord {
    alphabet: Alphabet,
    letters: Vec<Letter>,
    base: Base,
}

impl AddressWord {
    pub fn new(alphabet: Alphabet, letters: Vec<Letter>, base: Base) -> Result<Self, AddressError> {
        if let Some(&letter) = letters.iter().find(|m| m.alphabet() != alphabet) {
            return Err(AddressError::LetterArity { letter, alphabet });
        }
        if base.alphabet() != alphabet {
            return Err(AddressError::BaseArity { base, alphabet });
        }
        Ok(AddressWord {
            alphabet,
            letters,
            base,
        })
    }

    /// The depth-0 word for a distinguished point.
    pub fn point(base: Base) -> Self {
        AddressWord {
            alphabet: base.alphabet(),
            letters: Vec::new(),
            base,
        }
    }

    /// `m₁⋯m_k` closed with the distinguished point matching `m_k`.
    pub fn closed(alphabet: Alphabet, letters: Vec<Letter>) -> Result<Self, AddressError> {
        let last = *letters.last().ok_or(AddressError::NothingToClose)?;
        AddressWord::new(alphabet, letters, last.closing_base())
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn depth(&self) -> usize {
        self.letters.len()
    }

    /// `m · self`.
    pub fn prepend(&self, m: Letter) -> Result<Self, AddressError> {
        let mut letters = Vec::with_capacity(self.letters.len() + 1);
        letters.push(m);
        letters.extend_from_slice(&self.letters);
        AddressWord::new(self.alphabet, letters, self.base)
    }

    /// Drops the first letter.
    pub fn tail(&self) -> Option<Self> {
        if self.letters.is_empty() {
            return None;
        }
        Some(AddressWord {
            alphabet: self.alphabet,
            letters: self.letters[1..].to_vec(),
            base: self.base,
        })
    }

    /// Parses `letters.base`, inferring the alphabet from the letters (or from
    /// the base when there are none) unless `hint` fixes it.
    pub fn parse_with(text: &str, hint: Option<Alphabet>) -> Result<Self, AddressError> {
        let err = |token: &str, reason| AddressError::Parse {
            word: text.to_string(),
            token: token.to_string(),
            reason,
        };
        let (head, base_text) = text
            .rsplit_once('.')
            .ok_or_else(|| err(text, "missing `.` before the base symbol"))?;
        let mut letters = Vec::with_capacity(head.len());
        for c in head.chars() {
            let letter =
                Letter::from_symbol(c).ok_or_else(|| err(&c.to_string(), "invalid letter"))?;
            letters.push(letter);
        }
        let mut base_chars = base_text.chars();
        let base_char = match (base_chars.next(), base_chars.next()) {
            (Some(c), None) => c,
            _ => return Err(err(base_text, "base must be a single symbol")),
        };

        let from_letters = match letters.first() {
            Some(first) => {
                let alphabet = first.alphabet();
                if let Some(other) = letters.iter().find(|m| m.alphabet() != alphabet) {
                    return Err(err(&other.to_string(), "letters from both alphabets"));
                }
                Some(alphabet)
            }
            None => None,
        };
        let alphabet = match (from_letters, hint) {
            (Some(a), Some(h)) if a != h => return Err(AddressError::AlphabetMismatch(a, h)),
            (Some(a), _) => a,
            (None, Some(h)) => h,
            (None, None) => match base_char {
                'B' => Alphabet::Bi,
                'L' | 'R' => Alphabet::Tri,
                'T' => return Err(AddressError::Ambiguous(text.to_string())),
                _ => return Err(err(base_text, "invalid base symbol")),
            },
        };
        let base = Base::from_symbol(base_char, alphabet)
            .ok_or_else(|| err(base_text, "base symbol does not match the letters"))?;
        AddressWord::new(alphabet, letters, base)
    }
}

impl FromStr for AddressWord {
    type Err = AddressError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AddressWord::parse_with(s, None)
    }
}

impl fmt::Display for AddressWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in &self.letters {
            write!(f, "{m}")?;
        }
        write!(f, ".{}", self.base)
    }
}

/// Parses two words that must share an alphabet; a word like `.T` takes its
/// alphabet from the other one (bi-pointed if both are ambiguous).
pub fn parse_word_pair(a: &str, b: &str) -> Result<(AddressWord, AddressWord), AddressError> {
    let first = AddressWord::parse_with(a, None);
    let second = AddressWord::parse_with(b, None);
    match (first, second) {
        (Ok(x), Ok(y)) => {
            if x.alphabet != y.alphabet {
                return Err(AddressError::AlphabetMismatch(x.alphabet, y.alphabet));
            }
            Ok((x, y))
        }
        (Ok(x), Err(AddressError::Ambiguous(_))) => {
            let y = AddressWord::parse_with(b, Some(x.alphabet))?;
            Ok((x, y))
        }
        (Err(AddressError::Ambiguous(_)), Ok(y)) => {
            let x = AddressWord::parse_with(a, Some(y.alphabet))?;
            Ok((x, y))
        }
        (Err(AddressError::Ambiguous(_)), Err(AddressError::Ambiguous(_))) => Ok((
            AddressWord::parse_with(a, Some(Alphabet::Bi))?,
            AddressWord::parse_with(b, Some(Alphabet::Bi))?,
        )),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn same_alphabet(w: &AddressWord, v: &AddressWord) -> Result<Alphabet, AddressError> {
    if w.alphabet != v.alphabet {
        Err(AddressError::AlphabetMismatch(w.alphabet, v.alphabet))
    } else {
        Ok(w.alphabet)
    }
}

fn indicator(differ: bool) -> Dyadic {
    if differ {
        Dyadic::one()
    } else {
        Dyadic::zero()
    }
}

/// Distances from `letters.base` to each distinguished point of its level,
/// indexed by [`Base::index`].
fn distinguished_profile(alphabet: Alphabet, letters: &[Letter], base: Base) -> Vec<Dyadic> {
    let glue = GluingTable::standard(alphabet);
    let bases = alphabet.bases();
    let mut prof: Vec<Dyadic> = bases.iter().map(|&d| indicator(d != base)).collect();
    for &m in letters.iter().rev() {
        prof = bases
            .iter()
            .map(|&target| {
                let n = target.extension_letter();
                if m == n {
                    prof[target.index()].half()
                } else {
                    cross_distance(
                        &glue,
                        m,
                        n,
                        |u| prof[u.index()].clone(),
                        |v| indicator(v != target),
                        |s, t| indicator(s != t),
                    )
                }
            })
            .collect();
    }
    prof
}

/// Appends the canonical continuation of the base until the word has `depth`
/// letters: `⊥ → l, ⊤ → r, T → a, L → b, R → c`.
pub fn embed(w: &AddressWord, depth: usize) -> Result<AddressWord, AddressError> {
    if depth < w.depth() {
        return Err(AddressError::EmbedDepth {
            len: w.depth(),
            depth,
        });
    }
    let mut letters = w.letters.clone();
    letters.resize(depth, w.base.extension_letter());
    Ok(AddressWord {
        alphabet: w.alphabet,
        letters,
        base: w.base,
    })
}

/// Exact distance in the colimit; words of different depth are first
/// embedded at the larger depth.
pub fn word_distance(w: &AddressWord, v: &AddressWord) -> Result<Dyadic, AddressError> {
    let alphabet = same_alphabet(w, v)?;
    let depth = w.depth().max(v.depth());
    let w = embed(w, depth)?;
    let v = embed(v, depth)?;
    let split = w.letters.iter().zip(&v.letters).position(|(a, b)| a != b);
    let Some(i) = split else {
        return Ok(indicator(w.base != v.base).scale_pow2(-(depth as i64)));
    };
    let pw = distinguished_profile(alphabet, &w.letters[i + 1..], w.base);
    let pv = distinguished_profile(alphabet, &v.letters[i + 1..], v.base);
    let glue = GluingTable::standard(alphabet);
    let d = cross_distance(
        &glue,
        w.letters[i],
        v.letters[i],
        |u| pw[u.index()].clone(),
        |u| pv[u.index()].clone(),
        |s, t| indicator(s != t),
    );
    Ok(d.scale_pow2(-(i as i64)))
}

/// Same point of the colimit.
pub fn words_equivalent(w: &AddressWord, v: &AddressWord) -> Result<bool, AddressError> {
    Ok(word_distance(w, v)?.is_zero())
}

/// The dyadic `c_k` of a bi-pointed word: `l` halves, `r` halves and adds ½.
pub fn fold_dyadic(w: &AddressWord) -> Result<Dyadic, AddressError> {
    if w.alphabet != Alphabet::Bi {
        return Err(AddressError::WrongAlphabet {
            op: "fold_dyadic",
            expected: Alphabet::Bi,
        });
    }
    let start = indicator(w.base == Base::Top);
    Ok(w.letters.iter().rev().fold(start, |acc, m| match m {
        Letter::L => acc.half(),
        _ => (&acc + &Dyadic::one()).half(),
    }))
}

/// Planar point with the vertical coordinate in units of `√3/2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlanarPoint {
    pub x: Dyadic,
    pub y_units: Dyadic,
}

impl fmt::Display for PlanarPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}·√3/2)", self.x, self.y_units)
    }
}

fn vertex(base: Base) -> PlanarPoint {
    let (x, y) = match base {
        Base::T => (Dyadic::new(1, 1), Dyadic::one()),
        Base::L => (Dyadic::zero(), Dyadic::zero()),
        _ => (Dyadic::one(), Dyadic::zero()),
    };
    PlanarPoint { x, y_units: y }
}

/// Display coordinates in the standard gasket: `a`, `b`, `c` contract by ½
/// towards the apex, `(0,0)` and `(1,0)` respectively.
pub fn gasket_coords(w: &AddressWord) -> Result<PlanarPoint, AddressError> {
    if w.alphabet != Alphabet::Tri {
        return Err(AddressError::WrongAlphabet {
            op: "gasket_coords",
            expected: Alphabet::Tri,
        });
    }
    Ok(w.letters.iter().rev().fold(vertex(w.base), |p, m| {
        let v = vertex(m.closing_base());
        PlanarPoint {
            x: (&p.x + &v.x).half(),
            y_units: (&p.y_units + &v.y_units).half(),
        }
    }))
}

/// Every word of exactly `depth` letters, first letter most significant and
/// the base least significant.
pub fn enumerate_words(alphabet: Alphabet, depth: usize) -> Vec<AddressWord> {
    let mut words: Vec<AddressWord> = alphabet
        .bases()
        .iter()
        .map(|&b| AddressWord::point(b))
        .collect();
    for _ in 0..depth {
        words = alphabet
            .letters()
            .iter()
            .flat_map(|&m| {
                words.iter().map(move |w| AddressWord {
                    alphabet,
                    letters: std::iter::once(m)
                        .chain(w.letters.iter().copied())
                        .collect(),
                    base: w.base,
                })
            })
            .collect();
    }
    words
}

/// A point of the colimit, represented by any word in its class.
#[derive(Debug, Clone)]
pub struct ColimitPoint {
    representative: AddressWord,
}

impl ColimitPoint {
    pub fn new(representative: AddressWord) -> Self {
        ColimitPoint { representative }
    }

    pub fn representative(&self) -> &AddressWord {
        &self.representative
    }

    pub fn distance(&self, other: &ColimitPoint) -> Result<Dyadic, AddressError> {
        word_distance(&self.representative, &other.representative)
    }
}

impl PartialEq for ColimitPoint {
    fn eq(&self, other: &Self) -> bool {
        words_equivalent(&self.representative, &other.representative).unwrap_or(false)
    }
}

impl Eq for ColimitPoint {}

impl fmt::Display for ColimitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}
