//! Pointed metric spaces: the trait every carrier implements, finite spaces
//! with explicit distance tables, and the axiom checker.

use std::fmt;

use rand::Rng;
use thiserror::Error;

use crate::alphabet::{Alphabet, Base};
use crate::dyadic::Dyadic;

/// A one-bounded metric space with 2 or 3 distinguished points, pairwise at distance 1.
pub trait PointedMetric {
    type Point: Clone + PartialEq + fmt::Debug;

    fn alphabet(&self) -> Alphabet;

    fn distinguished(&self, base: Base) -> Self::Point;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Dyadic;
}

impl<S: PointedMetric + ?Sized> PointedMetric for &S {
    type Point = S::Point;

    fn alphabet(&self) -> Alphabet {
        (**self).alphabet()
    }

    fn distinguished(&self, base: Base) -> Self::Point {
        (**self).distinguished(base)
    }

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Dyadic {
        (**self).distance(x, y)
    }
}

/// `[0, 1]` with `⊥ = 0`, `⊤ = 1` and the usual metric, restricted to dyadic points.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitInterval;

impl PointedMetric for UnitInterval {
    type Point = Dyadic;

    fn alphabet(&self) -> Alphabet {
        Alphabet::Bi
    }

    fn distinguished(&self, base: Base) -> Dyadic {
        match base {
            Base::Bot => Dyadic::zero(),
            Base::Top => Dyadic::one(),
            other => panic!("{other:?} is not a bi-pointed symbol"),
        }
    }

    fn distance(&self, x: &Dyadic, y: &Dyadic) -> Dyadic {
        x.abs_diff(y)
    }
}

/// Structural problems that make a distance table meaningless, as opposed
/// to metric-axiom violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("distance table has {rows} rows for {points} points")]
    RowCount { points: usize, rows: usize },
    #[error("row {row} has {found} entries, expected {expected}")]
    RowLength {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("expected 2 or 3 distinguished points, got {0}")]
    DistinguishedCount(usize),
    #[error("distinguished index {0} out of range")]
    DistinguishedIndex(usize),
    #[error("distinguished point {0} listed twice")]
    DistinguishedRepeated(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfDistance { x: usize, found: Dyadic },
    ZeroBetweenDistinct { x: usize, y: usize },
    Negative { x: usize, y: usize, found: Dyadic },
    Asymmetric { x: usize, y: usize },
    Triangle { x: usize, y: usize, z: usize },
    ExceedsOne { x: usize, y: usize, found: Dyadic },
    DistinguishedDistance { x: usize, y: usize, found: Dyadic },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfDistance { x, found } => write!(f, "d({x},{x}) = {found} != 0"),
            Violation::ZeroBetweenDistinct { x, y } => {
                write!(f, "d({x},{y}) = 0 for distinct points")
            }
            Violation::Negative { x, y, found } => write!(f, "d({x},{y}) = {found} < 0"),
            Violation::Asymmetric { x, y } => write!(f, "d({x},{y}) != d({y},{x})"),
            Violation::Triangle { x, y, z } => write!(f, "d({x},{z}) > d({x},{y}) + d({y},{z})"),
            Violation::ExceedsOne { x, y, found } => write!(f, "d({x},{y}) = {found} > 1"),
            Violation::DistinguishedDistance { x, y, found } => {
                write!(f, "distinguished d({x},{y}) = {found} != 1")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite pointed space with an explicit distance table. Points are indices
/// into `labels`; distinguished points are listed in base order
/// (`⊥, ⊤` or `T, L, R`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePointedSpace {
    labels: Vec<String>,
    distinguished: Vec<usize>,
    dist: Vec<Vec<Dyadic>>,
}

impl FinitePointedSpace {
    pub fn new(
        labels: Vec<String>,
        distinguished: Vec<usize>,
        dist: Vec<Vec<Dyadic>>,
    ) -> Result<Self, SpaceError> {
        let n = labels.len();
        if dist.len() != n {
            return Err(SpaceError::RowCount {
                points: n,
                rows: dist.len(),
            });
        }
        for (row, entries) in dist.iter().enumerate() {
            if entries.len() != n {
                return Err(SpaceError::RowLength {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
        }
        if !(2..=3).contains(&distinguished.len()) {
            return Err(SpaceError::DistinguishedCount(distinguished.len()));
        }
        for (i, &d) in distinguished.iter().enumerate() {
            if d >= n {
                return Err(SpaceError::DistinguishedIndex(d));
            }
            if distinguished[..i].contains(&d) {
                return Err(SpaceError::DistinguishedRepeated(d));
            }
        }
        Ok(FinitePointedSpace {
            labels,
            distinguished,
            dist,
        })
    }

    /// The initial object: only the distinguished points, pairwise at distance 1.
    pub fn discrete(alphabet: Alphabet) -> Self {
        let bases = alphabet.bases();
        let labels = bases.iter().map(|b| b.symbol().to_string()).collect();
        let dist = (0..bases.len())
            .map(|i| {
                (0..bases.len())
                    .map(|j| {
                        if i == j {
                            Dyadic::zero()
                        } else {
                            Dyadic::one()
                        }
                    })
                    .collect()
            })
            .collect();
        FinitePointedSpace {
            labels,
            distinguished: (0..bases.len()).collect(),
            dist,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn distinguished_indices(&self) -> &[usize] {
        &self.distinguished
    }

    pub fn table(&self) -> &[Vec<Dyadic>] {
        &self.dist
    }

    pub fn get(&self, x: usize, y: usize) -> &Dyadic {
        &self.dist[x][y]
    }

    /// Overwrites one entry (both orientations when `symmetric`).
    pub fn set(&mut self, x: usize, y: usize, value: Dyadic, symmetric: bool) {
        if symmetric {
            self.dist[y][x] = value.clone();
        }
        self.dist[x][y] = value;
    }

    /// Checks every axiom instance and records each violation with its witnesses.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let d = &self.dist;
        let one = Dyadic::one();
        let mut violations = Vec::new();
        for x in 0..n {
            if !d[x][x].is_zero() {
                violations.push(Violation::SelfDistance {
                    x,
                    found: d[x][x].clone(),
                });
            }
            for y in 0..n {
                if x == y {
                    continue;
                }
                if d[x][y].is_negative() {
                    violations.push(Violation::Negative {
                        x,
                        y,
                        found: d[x][y].clone(),
                    });
                }
                if x < y {
                    if d[x][y] != d[y][x] {
                        violations.push(Violation::Asymmetric { x, y });
                    }
                    if d[x][y].is_zero() || d[y][x].is_zero() {
                        violations.push(Violation::ZeroBetweenDistinct { x, y });
                    }
                }
                if d[x][y] > one {
                    violations.push(Violation::ExceedsOne {
                        x,
                        y,
                        found: d[x][y].clone(),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if d[x][z] > &d[x][y] + &d[y][z] {
                        violations.push(Violation::Triangle { x, y, z });
                    }
                }
            }
        }
        for (i, &x) in self.distinguished.iter().enumerate() {
            for &y in &self.distinguished[i + 1..] {
                for (p, q) in [(x, y), (y, x)] {
                    if d[p][q] != one {
                        violations.push(Violation::DistinguishedDistance {
                            x: p,
                            y: q,
                            found: d[p][q].clone(),
                        });
                    }
                }
            }
        }
        ValidationReport { violations }
    }
}

impl PointedMetric for FinitePointedSpace {
    type Point = usize;

    fn alphabet(&self) -> Alphabet {
        if self.distinguished.len() == 2 {
            Alphabet::Bi
        } else {
            Alphabet::Tri
        }
    }

    fn distinguished(&self, base: Base) -> usize {
        assert_eq!(
            base.alphabet(),
            self.alphabet(),
            "base symbol of the wrong arity"
        );
        self.distinguished[base.index()]
    }

    fn distance(&self, x: &usize, y: &usize) -> Dyadic {
        self.dist[*x][*y].clone()
    }
}

/// Builds the table and validates it in one go.
pub fn validate_pointed_space(
    labels: Vec<String>,
    distinguished: Vec<usize>,
    dist: Vec<Vec<Dyadic>>,
) -> Result<ValidationReport, SpaceError> {
    Ok(FinitePointedSpace::new(labels, distinguished, dist)?.validate())
}

/// Samples a valid pointed space with `size` points (distinguished first).
///
/// Edge weights are drawn from `{1/16, ..., 1}`, closed under shortest paths,
/// and the sample is rejected if the closure pulls two distinguished points
/// closer than 1.
pub fn random_pointed_space<R: Rng + ?Sized>(
    rng: &mut R,
    alphabet: Alphabet,
    size: usize,
) -> FinitePointedSpace {
    let k = alphabet.arity();
    assert!(size >= k, "space must contain its distinguished points");
    loop {
        let mut w = vec![vec![Dyadic::zero(); size]; size];
        for x in 0..size {
            for y in x + 1..size {
                let v = if x < k && y < k {
                    Dyadic::one()
                } else {
                    Dyadic::new(rng.random_range(1..=16i64), 4)
                };
                w[x][y] = v.clone();
                w[y][x] = v;
            }
        }
        for m in 0..size {
            for x in 0..size {
                for y in 0..size {
                    let via = &w[x][m] + &w[m][y];
                    if via < w[x][y] {
                        w[x][y] = via;
                    }
                }
            }
        }
        let ok = (0..k).all(|x| (0..k).all(|y| x == y || w[x][y] == Dyadic::one()));
        if !ok {
            continue;
        }
        let labels = (0..size)
            .map(|i| {
                if i < k {
                    alphabet.bases()[i].symbol().to_string()
                } else {
                    format!("p{i}")
                }
            })
            .collect();
        let space = FinitePointedSpace::new(labels, (0..k).collect(), w)
            .expect("generated table is square");
        debug_assert!(space.validate().is_valid());
        return space;
    }
}
