//! The counterexamples: a Lipschitz coalgebra on `[0, 1]` (and its copy on the
//! bottom edge of a triangle) whose mediating map into the final coalgebra is
//! not Lipschitz, and two algebras whose mediating maps out of the initial
//! algebra are not continuous.
//!
//! The mediating map `f` of the interval coalgebra is evaluated two ways:
//! top-down by the recursion its commuting square forces ([`f_reference`]),
//! and bottom-up by iterating the coalgebra until its stream becomes constant
//! and folding the resulting word ([`interval_fold_limit`]).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::address::{
    fold_dyadic, gasket_coords, word_distance, AddressError, AddressWord, ColimitPoint,
};
use crate::alphabet::{Alphabet, Base, Letter};
use crate::dyadic::{Dyadic, ParseDyadicError};
use crate::morphisms::{
    algebra_fold, check_unit, stable_truncation, BipAlg, Coalgebra, MorphismError, TripAlg,
};

/// Largest `n` accepted by the interval-family experiments.
pub const MAX_FAMILY_INDEX: usize = 12;

/// Iteration cap when waiting for a stream to become constant. A dyadic with
/// denominator `2^q` reaches a fixed point in at most `q/2 + 2` steps.
const STABLE_DEPTH_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("the two applicable cases disagree at x = {0}")]
    BranchDisagreement(Dyadic),
    #[error("the iteration from {0} did not become constant")]
    NotStable(String),
    #[error("n = {n} is outside 1..={cap}")]
    FamilyIndex { n: usize, cap: usize },
    #[error("cannot parse triangle point `{0}`: expected `apex` or `x,0`")]
    TrianglePoint(String),
    #[error(transparent)]
    Dyadic(#[from] ParseDyadicError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Address(#[from] AddressError),
}

fn d(num: i64, exp: u32) -> Dyadic {
    Dyadic::new(num, exp)
}

/// The four-branch coalgebra on `[0, 1]`: flat at both ends, Freyd's
/// structure rescaled by 4 on the middle half.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalE;

impl Coalgebra for IntervalE {
    type Point = Dyadic;

    fn name(&self) -> &'static str {
        "interval-e"
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

    fn branches(&self, x: &Dyadic) -> Result<Vec<(Letter, Dyadic)>, MorphismError> {
        check_unit(self.name(), x)?;
        Ok(quarter_branches(x, Letter::L, Letter::R))
    }
}

/// The branches of the four-piece map, using `lo`/`hi` for the two letters.
fn quarter_branches(x: &Dyadic, lo: Letter, hi: Letter) -> Vec<(Letter, Dyadic)> {
    let quad = x.scale_pow2(2);
    let candidates = [
        (*x <= d(1, 2), (lo, Dyadic::zero())),
        (d(1, 2) <= *x && *x <= d(1, 1), (lo, &quad - &Dyadic::one())),
        (
            d(1, 1) <= *x && *x <= d(3, 2),
            (hi, &quad - &Dyadic::from_int(2)),
        ),
        (d(3, 2) <= *x, (hi, Dyadic::one())),
    ];
    let mut out: Vec<(Letter, Dyadic)> = Vec::with_capacity(2);
    for (applies, branch) in candidates {
        if applies && !out.contains(&branch) {
            out.push(branch);
        }
    }
    out
}

/// One step of [`IntervalE`], taking the first applicable branch.
pub fn interval_e(x: &Dyadic) -> Result<(Letter, Dyadic), MorphismError> {
    IntervalE.step(x)
}

/// A point of the triangle `△`: the apex, or a point `(x, 0)` of the bottom
/// edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TrianglePoint {
    Apex,
    Bottom(Dyadic),
}

impl fmt::Display for TrianglePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrianglePoint::Apex => f.write_str("apex"),
            TrianglePoint::Bottom(x) => write!(f, "{x},0"),
        }
    }
}

impl FromStr for TrianglePoint {
    type Err = ExperimentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "apex" {
            return Ok(TrianglePoint::Apex);
        }
        let (x, y) = s
            .split_once(',')
            .ok_or_else(|| ExperimentError::TrianglePoint(s.to_string()))?;
        if y.trim() != "0" {
            return Err(ExperimentError::TrianglePoint(s.to_string()));
        }
        Ok(TrianglePoint::Bottom(x.trim().parse()?))
    }
}

/// The triangle coalgebra: the apex is fixed under `a`, and the bottom edge
/// follows [`IntervalE`] with `b` and `c` in place of `l` and `r`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TriangleE;

impl Coalgebra for TriangleE {
    type Point = TrianglePoint;

    fn name(&self) -> &'static str {
        "triangle-e"
    }

    fn alphabet(&self) -> Alphabet {
        Alphabet::Tri
    }

    fn distinguished(&self, base: Base) -> TrianglePoint {
        match base {
            Base::L => TrianglePoint::Bottom(Dyadic::zero()),
            Base::R => TrianglePoint::Bottom(Dyadic::one()),
            _ => TrianglePoint::Apex,
        }
    }

    fn branches(&self, p: &TrianglePoint) -> Result<Vec<(Letter, TrianglePoint)>, MorphismError> {
        match p {
            TrianglePoint::Apex => Ok(vec![(Letter::A, TrianglePoint::Apex)]),
            TrianglePoint::Bottom(x) => {
                check_unit(self.name(), x)?;
                Ok(quarter_branches(x, Letter::B, Letter::C)
                    .into_iter()
                    .map(|(m, y)| (m, TrianglePoint::Bottom(y)))
                    .collect())
            }
        }
    }
}

/// One step of [`TriangleE`].
pub fn triangle_e(p: &TrianglePoint) -> Result<(Letter, TrianglePoint), MorphismError> {
    TriangleE.step(p)
}

/// The mediating map of [`IntervalE`], from the recursion its commuting
/// square forces:
///
/// ```text
/// f(x) = 0                 on [0, 1/4]
/// f(x) = f(4x − 1) / 2     on [1/4, 1/2]
/// f(x) = (1 + f(4x − 2))/2 on [1/2, 3/4]
/// f(x) = 1                 on [3/4, 1]
/// ```
///
/// Where two cases apply, both are evaluated and must agree.
pub fn f_reference(x: &Dyadic) -> Result<Dyadic, ExperimentError> {
    check_unit("f", x)?;
    let quad = x.scale_pow2(2);
    let mut value: Option<Dyadic> = None;
    let mut record = |v: Dyadic| -> Result<(), ExperimentError> {
        match &value {
            Some(prev) if *prev != v => Err(ExperimentError::BranchDisagreement(x.clone())),
            _ => {
                value = Some(v);
                Ok(())
            }
        }
    };
    if *x <= d(1, 2) {
        record(Dyadic::zero())?;
    }
    if d(1, 2) <= *x && *x <= d(1, 1) {
        record(f_reference(&(&quad - &Dyadic::one()))?.half())?;
    }
    if d(1, 1) <= *x && *x <= d(3, 2) {
        record((&Dyadic::one() + &f_reference(&(&quad - &Dyadic::from_int(2)))?).half())?;
    }
    if d(3, 2) <= *x {
        record(Dyadic::one())?;
    }
    Ok(value.expect("the four cases cover [0, 1]"))
}

/// The exact value of a coalgebra's mediating map as a stable truncation.
pub fn stable_word<C: Coalgebra>(c: &C, x: &C::Point) -> Result<AddressWord, ExperimentError> {
    stable_truncation(c, x, STABLE_DEPTH_CAP)?
        .map(|(_, w)| w)
        .ok_or_else(|| ExperimentError::NotStable(x.to_string()))
}

/// `f(x)` by iterating [`IntervalE`] and folding the stable truncation.
pub fn interval_fold_limit(x: &Dyadic) -> Result<Dyadic, ExperimentError> {
    fold_limit_with(&IntervalE, x)
}

/// Like [`interval_fold_limit`] for any bi-pointed coalgebra on dyadics.
pub fn fold_limit_with<C: Coalgebra<Point = Dyadic>>(
    c: &C,
    x: &Dyadic,
) -> Result<Dyadic, ExperimentError> {
    Ok(fold_dyadic(&stable_word(c, x)?)?)
}

/// `g(x, 0)` as the horizontal coordinate of the gasket point reached by
/// iterating [`TriangleE`]. The point must lie on the bottom edge.
pub fn triangle_g_coordinate(x: &Dyadic) -> Result<Dyadic, ExperimentError> {
    let w = stable_word(&TriangleE, &TrianglePoint::Bottom(x.clone()))?;
    let p = gasket_coords(&w)?;
    if !p.y_units.is_zero() {
        return Err(ExperimentError::NotStable(format!(
            "{x},0 left the bottom edge"
        )));
    }
    Ok(p.x)
}

/// `g(x, 0)` as the word-metric distance from the image point to `L`.
pub fn triangle_g_distance(x: &Dyadic) -> Result<Dyadic, ExperimentError> {
    let w = stable_word(&TriangleE, &TrianglePoint::Bottom(x.clone()))?;
    Ok(word_distance(&w, &AddressWord::point(Base::L))?)
}

/// `1/4 + 1/16 + ⋯ + 1/4ⁿ`.
pub fn quarter_sum(n: usize) -> Dyadic {
    (1..=n).fold(Dyadic::zero(), |acc, i| {
        &acc + &Dyadic::pow2_neg(2 * i as u32)
    })
}

/// Which of the two interval families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    I,
    J,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::I => "I",
            Family::J => "J",
        })
    }
}

/// `I_n = [1/4, s_n]` or `J_n = [s_n + 3/4^{n+1}, s_n + 4/4^{n+1}]`, where
/// `s_n = 1/4 + ⋯ + 1/4ⁿ`.
pub fn family_interval(family: Family, n: usize) -> (Dyadic, Dyadic) {
    let s = quarter_sum(n);
    match family {
        Family::I => (Dyadic::pow2_neg(2), s),
        Family::J => {
            let step = Dyadic::pow2_neg(2 * (n as u32 + 1));
            (
                &s + &(&step * &Dyadic::from_int(3)),
                &s + &(&step * &Dyadic::from_int(4)),
            )
        }
    }
}

/// The value both mediating maps take on the family.
pub fn family_value(family: Family, n: usize) -> Dyadic {
    match family {
        Family::I => Dyadic::zero(),
        Family::J => Dyadic::pow2_neg(n as u32),
    }
}

/// Endpoints plus `interior` evenly spaced dyadic points strictly inside.
pub fn family_samples(family: Family, n: usize, interior: usize) -> Vec<Dyadic> {
    let (lo, hi) = family_interval(family, n);
    let mut out = vec![lo.clone()];
    let bits = usize::BITS - interior.leading_zeros();
    let step = (&hi - &lo).scale_pow2(-i64::from(bits));
    for k in 1..=interior {
        out.push(&lo + &(&step * &Dyadic::from_int(k as i64)));
    }
    out.push(hi);
    out.dedup();
    out
}

/// One evaluated sample of a claims check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimSample {
    pub family: Family,
    pub n: usize,
    pub x: Dyadic,
    pub expected: Dyadic,
    pub route_a: Dyadic,
    pub route_b: Dyadic,
}

impl ClaimSample {
    pub fn passed(&self) -> bool {
        self.route_a == self.expected && self.route_b == self.expected
    }
}

impl fmt::Display for ClaimSample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}_{} x={} expected={} a={} b={}",
            self.family, self.n, self.x, self.expected, self.route_a, self.route_b
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimsReport {
    pub samples: Vec<ClaimSample>,
}

impl ClaimsReport {
    pub fn passed(&self) -> bool {
        self.samples.iter().all(ClaimSample::passed)
    }

    pub fn first_failure(&self) -> Option<&ClaimSample> {
        self.samples.iter().find(|s| !s.passed())
    }

    pub fn failures(&self) -> usize {
        self.samples.iter().filter(|s| !s.passed()).count()
    }
}

fn check_family_index(n_max: usize) -> Result<(), ExperimentError> {
    if n_max == 0 || n_max > MAX_FAMILY_INDEX {
        Err(ExperimentError::FamilyIndex {
            n: n_max,
            cap: MAX_FAMILY_INDEX,
        })
    } else {
        Ok(())
    }
}

/// Evaluates two routes on the samples of `I_n` and `J_n` for `n ≤ n_max`,
/// in order `I_1, J_1, I_2, J_2, …`.
pub fn verify_claims_with(
    n_max: usize,
    interior: usize,
    route_a: impl Fn(&Dyadic) -> Result<Dyadic, ExperimentError>,
    route_b: impl Fn(&Dyadic) -> Result<Dyadic, ExperimentError>,
) -> Result<ClaimsReport, ExperimentError> {
    check_family_index(n_max)?;
    let mut samples = Vec::new();
    for n in 1..=n_max {
        for family in [Family::I, Family::J] {
            for x in family_samples(family, n, interior) {
                samples.push(ClaimSample {
                    family,
                    n,
                    expected: family_value(family, n),
                    route_a: route_a(&x)?,
                    route_b: route_b(&x)?,
                    x,
                });
            }
        }
    }
    Ok(ClaimsReport { samples })
}

/// The value laws for `f`: zero on `I_n`, `1/2ⁿ` on `J_n`, checked with
/// [`f_reference`] and [`interval_fold_limit`].
pub fn verify_claims_ab(n_max: usize, interior: usize) -> Result<ClaimsReport, ExperimentError> {
    verify_claims_with(n_max, interior, f_reference, interval_fold_limit)
}

/// The same claims for `g(x, 0)`, checked with the gasket coordinate and the
/// word-metric distance to `L`.
pub fn triangle_g_claims(n_max: usize, interior: usize) -> Result<ClaimsReport, ExperimentError> {
    verify_claims_with(n_max, interior, triangle_g_coordinate, triangle_g_distance)
}

/// The pair `x = s_n + 1/4^{n+1}`, `y = s_n + 3/4^{n+1}` and the ratio of
/// image distance to input distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzRow {
    pub n: usize,
    pub x: Dyadic,
    pub y: Dyadic,
    pub fx: Dyadic,
    pub fy: Dyadic,
    pub ratio: Dyadic,
}

/// Lipschitz ratios of `map` on the witness pairs for `n = 1..=n_max`.
pub fn lipschitz_table_with(
    n_max: usize,
    map: impl Fn(&Dyadic) -> Result<Dyadic, ExperimentError>,
) -> Result<Vec<LipschitzRow>, ExperimentError> {
    check_family_index(n_max)?;
    (1..=n_max)
        .map(|n| {
            let s = quarter_sum(n);
            let step = Dyadic::pow2_neg(2 * (n as u32 + 1));
            let x = &s + &step;
            let y = &s + &(&step * &Dyadic::from_int(3));
            let fx = map(&x)?;
            let fy = map(&y)?;
            let ratio = fx
                .abs_diff(&fy)
                .checked_div(&x.abs_diff(&y))
                .expect("the input distance is a power of two");
            Ok(LipschitzRow {
                n,
                x,
                y,
                fx,
                fy,
                ratio,
            })
        })
        .collect()
}

/// Lipschitz ratios of `f` from [`f_reference`].
pub fn lipschitz_table(n_max: usize) -> Result<Vec<LipschitzRow>, ExperimentError> {
    lipschitz_table_with(n_max, f_reference)
}

/// Problems with a Lipschitz table: a ratio other than `2^{n+1}`, or a row
/// that does not strictly exceed the previous one.
pub fn lipschitz_problems(rows: &[LipschitzRow]) -> Vec<String> {
    let mut out = Vec::new();
    for row in rows {
        let expected = Dyadic::one().scale_pow2(row.n as i64 + 1);
        if row.ratio != expected {
            out.push(format!("n={}: ratio {} != {}", row.n, row.ratio, expected));
        }
    }
    for pair in rows.windows(2) {
        if pair[1].ratio <= pair[0].ratio {
            out.push(format!("n={}: ratio does not increase", pair[1].n));
        }
    }
    out
}

/// Two nearby inputs whose images under an algebra's mediating map are far
/// apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<P, Q> {
    pub inputs: (P, P),
    pub input_distance: Dyadic,
    pub images: (Q, Q),
    pub image_distance: Dyadic,
}

fn discrete_distance(a: Base, b: Base) -> Dyadic {
    if a == b {
        Dyadic::zero()
    } else {
        Dyadic::one()
    }
}

/// `1` and `(2ⁿ − 1)/2ⁿ`, as the words `rⁿ·⊤` and `rⁿ·⊥`, folded by the
/// two-point algebra to `⊤` and `⊥`.
pub fn discontinuity_witness_bip(n: usize) -> Result<Witness<Dyadic, Base>, ExperimentError> {
    let top = AddressWord::new(Alphabet::Bi, vec![Letter::R; n], Base::Top)?;
    let near = AddressWord::new(Alphabet::Bi, vec![Letter::R; n], Base::Bot)?;
    let images = (algebra_fold(&BipAlg, &top)?, algebra_fold(&BipAlg, &near)?);
    Ok(Witness {
        inputs: (fold_dyadic(&top)?, fold_dyadic(&near)?),
        input_distance: word_distance(&top, &near)?,
        image_distance: discrete_distance(images.0, images.1),
        images,
    })
}

/// `[a^{n+1}·T]` and `[a^{n+1}·L]`, folded by the three-point algebra to `T`
/// and `L`.
pub fn discontinuity_witness_trip(
    n: usize,
) -> Result<Witness<ColimitPoint, Base>, ExperimentError> {
    let apex = AddressWord::new(Alphabet::Tri, vec![Letter::A; n + 1], Base::T)?;
    let near = AddressWord::new(Alphabet::Tri, vec![Letter::A; n + 1], Base::L)?;
    let images = (
        algebra_fold(&TripAlg, &apex)?,
        algebra_fold(&TripAlg, &near)?,
    );
    Ok(Witness {
        input_distance: word_distance(&apex, &near)?,
        inputs: (ColimitPoint::new(apex), ColimitPoint::new(near)),
        image_distance: discrete_distance(images.0, images.1),
        images,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::address::{enumerate_words, words_equivalent};
    use crate::completion::truncate;
    use crate::morphisms::{
        branch_iterates, branch_words, check_coalgebra_square, coalgebra_iterate, iterate_unbarred,
        mediating_final, validate_coalgebra, validate_overlap, Algebra, DyadicAlg,
    };
    use crate::space::UnitInterval;
    use crate::tensor::IteratedTensor;
    use crate::PointedMetric;

    fn q(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    fn grid(k: u32) -> Vec<Dyadic> {
        (0..=(1i64 << k)).map(|i| Dyadic::new(i, k)).collect()
    }

    #[test]
    fn interval_e_values() {
        assert_eq!(
            interval_e(&q("1/2^3")).unwrap(),
            (Letter::L, Dyadic::zero())
        );
        assert_eq!(interval_e(&q("3/2^3")).unwrap(), (Letter::L, q("1/2")));
        assert_eq!(interval_e(&q("7/2^3")).unwrap(), (Letter::R, Dyadic::one()));
        assert!(interval_e(&q("3/2")).is_err());
        assert!(interval_e(&q("-1/2")).is_err());
        validate_coalgebra(&IntervalE).unwrap();
        for x in grid(6) {
            validate_overlap(&IntervalE, &x).unwrap();
        }
    }

    #[test]
    fn triangle_e_values() {
        assert_eq!(
            triangle_e(&TrianglePoint::Apex).unwrap(),
            (Letter::A, TrianglePoint::Apex)
        );
        assert_eq!(
            triangle_e(&"1/2^3,0".parse().unwrap()).unwrap(),
            (Letter::B, TrianglePoint::Bottom(Dyadic::zero()))
        );
        assert_eq!(
            triangle_e(&"5/2^3,0".parse().unwrap()).unwrap(),
            (Letter::C, TrianglePoint::Bottom(q("1/2")))
        );
        assert!("1/2,1".parse::<TrianglePoint>().is_err());
        assert!("apex2".parse::<TrianglePoint>().is_err());
        validate_coalgebra(&TriangleE).unwrap();
    }

    #[test]
    fn bottom_edge_is_a_renamed_interval() {
        let rename = |m: Letter| match m {
            Letter::L => Letter::B,
            _ => Letter::C,
        };
        for x in grid(7) {
            let (m, y) = interval_e(&x).unwrap();
            let (n, z) = triangle_e(&TrianglePoint::Bottom(x.clone())).unwrap();
            assert_eq!(rename(m), n);
            assert_eq!(TrianglePoint::Bottom(y), z);
        }
    }

    #[test]
    fn coalgebra_iteration_examples() {
        let w = coalgebra_iterate(&IntervalE, &q("3/2^3"), 4).unwrap();
        assert_eq!(w.to_string(), "llrr.T");
        let w = coalgebra_iterate(&IntervalE, &Dyadic::zero(), 3).unwrap();
        assert_eq!(w.to_string(), "lll.B");
        let w = coalgebra_iterate(&TriangleE, &TrianglePoint::Apex, 5).unwrap();
        assert_eq!(w.to_string(), "aaaaa.T");
        let s = mediating_final(&IntervalE, &Dyadic::one());
        assert_eq!(truncate(&s, 6).unwrap().to_string(), "rrrrrr.T");
    }

    #[test]
    fn f_values() {
        assert_eq!(f_reference(&q("1/4")).unwrap(), Dyadic::zero());
        assert_eq!(f_reference(&q("7/2^4")).unwrap(), q("1/2"));
        assert_eq!(f_reference(&q("3/2^3")).unwrap(), q("1/4"));
        assert_eq!(interval_fold_limit(&q("3/2^3")).unwrap(), q("1/4"));
        assert_eq!(f_reference(&Dyadic::one()).unwrap(), Dyadic::one());
    }

    #[test]
    fn routes_agree_on_a_grid() {
        for x in grid(8) {
            assert_eq!(
                f_reference(&x).unwrap(),
                interval_fold_limit(&x).unwrap(),
                "{x}"
            );
            assert_eq!(triangle_g_coordinate(&x).unwrap(), f_reference(&x).unwrap());
            assert_eq!(triangle_g_distance(&x).unwrap(), f_reference(&x).unwrap());
        }
    }

    #[test]
    fn families() {
        assert_eq!(family_interval(Family::I, 2), (q("1/4"), q("5/2^4")));
        assert_eq!(family_interval(Family::J, 1), (q("7/2^4"), q("1/2")));
        for n in 1..=10 {
            let (lo, hi) = family_interval(Family::J, n);
            assert!(lo < hi && hi <= q("1/2"));
            assert_eq!(family_interval(Family::I, n).0, q("1/4"));
            let samples = family_samples(Family::J, n, 8);
            assert_eq!(samples.len(), 10);
            assert!(samples.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(family_samples(Family::I, 1, 8), vec![q("1/4")]);
    }

    #[test]
    fn claims_hold() {
        let report = verify_claims_ab(6, 8).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        let report = triangle_g_claims(4, 8).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure());
        assert!(verify_claims_ab(13, 1).is_err());
    }

    #[test]
    fn corrupted_branch_is_reported() {
        // the flat top branch sends [3/4, 1] to r ⊗ 0 instead of r ⊗ 1
        #[derive(Clone, Copy)]
        struct Corrupted;
        impl Coalgebra for Corrupted {
            type Point = Dyadic;
            fn name(&self) -> &'static str {
                "corrupted"
            }
            fn alphabet(&self) -> Alphabet {
                Alphabet::Bi
            }
            fn distinguished(&self, base: Base) -> Dyadic {
                IntervalE.distinguished(base)
            }
            fn branches(&self, x: &Dyadic) -> Result<Vec<(Letter, Dyadic)>, MorphismError> {
                let mut out = IntervalE.branches(x)?;
                for b in &mut out {
                    if *x > q("3/4") && b.0 == Letter::R {
                        b.1 = Dyadic::zero();
                    }
                }
                Ok(out)
            }
        }
        let report =
            verify_claims_with(3, 8, f_reference, |x| fold_limit_with(&Corrupted, x)).unwrap();
        assert!(!report.passed());
        let first = report.first_failure().unwrap();
        assert_eq!((first.family, first.n), (Family::J, 1));
        assert_eq!(first.x, q("7/2^4"));
    }

    #[test]
    fn lipschitz_rows() {
        let rows = lipschitz_table(10).unwrap();
        assert!(lipschitz_problems(&rows).is_empty());
        assert_eq!(rows[0].x, q("5/2^4"));
        assert_eq!(rows[0].y, q("7/2^4"));
        assert_eq!(rows[0].ratio, Dyadic::from_int(4));
        assert_eq!(rows[2].ratio, Dyadic::from_int(16));
        assert!(rows.iter().all(|r| r.fx.is_zero()));
        let g_rows = lipschitz_table_with(10, triangle_g_coordinate).unwrap();
        assert_eq!(g_rows, rows);
    }

    #[test]
    fn witnesses() {
        let w = discontinuity_witness_bip(3).unwrap();
        assert_eq!(w.inputs, (Dyadic::one(), q("7/2^3")));
        assert_eq!(w.input_distance, q("1/2^3"));
        assert_eq!(w.images, (Base::Top, Base::Bot));
        assert_eq!(w.image_distance, Dyadic::one());
        let w = discontinuity_witness_trip(2).unwrap();
        assert_eq!(w.input_distance, q("1/2^3"));
        assert_eq!(w.images, (Base::T, Base::L));
        assert_eq!(
            discontinuity_witness_trip(1).unwrap().input_distance,
            q("1/2^2")
        );
    }

    #[test]
    fn branch_choice_independence() {
        let x = q("3/2^3");
        // the split at 1/2 happens on the second letter
        let words = branch_words(&IntervalE, &x, 2).unwrap();
        assert_eq!(words.len(), 2);
        assert_eq!(word_distance(&words[0], &words[1]).unwrap(), q("1/2"));
        for p in 3..=10 {
            let words = branch_words(&IntervalE, &x, p).unwrap();
            assert!(words_equivalent(&words[0], &words[1]).unwrap());
        }
        for x in grid(6) {
            for p in 1..=10 {
                let space = IteratedTensor::new(UnitInterval, p);
                let chis = branch_iterates(&IntervalE, &x, p).unwrap();
                for chi in &chis {
                    assert!(space.distance(chi, &chis[0]).is_zero(), "{x} {p}");
                    let limit = chi
                        .0
                        .iter()
                        .rev()
                        .fold(interval_fold_limit(&chi.1).unwrap(), |acc, &m| {
                            DyadicAlg.op(m, &acc)
                        });
                    assert_eq!(limit, f_reference(&x).unwrap());
                }
            }
        }
    }

    #[test]
    fn coalgebra_square_defects() {
        for x in grid(4) {
            for p in 2..=10 {
                let defect = check_coalgebra_square(&IntervalE, &x, p).unwrap();
                assert!(defect <= Dyadic::pow2_neg(p as u32 - 2));
            }
        }
        for p in 2..=6 {
            assert!(check_coalgebra_square(&TriangleE, &TrianglePoint::Apex, p)
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn continuity_inequality() {
        // |d(θ_p^x, θ_p^y) − d(χ_p^x, χ_p^y)| ≤ 2/2^p, with χ_p the
        // unbarred iterate carrying the residual point of [0, 1]
        let xs = grid(4);
        for p in 1..=8 {
            let space = IteratedTensor::new(UnitInterval, p);
            let bound = Dyadic::pow2_neg(p as u32 - 1);
            for x in &xs {
                for y in &xs {
                    let theta = word_distance(
                        &coalgebra_iterate(&IntervalE, x, p).unwrap(),
                        &coalgebra_iterate(&IntervalE, y, p).unwrap(),
                    )
                    .unwrap();
                    let chi = space.distance(
                        &iterate_unbarred(&IntervalE, x, p).unwrap(),
                        &iterate_unbarred(&IntervalE, y, p).unwrap(),
                    );
                    assert!(theta.abs_diff(&chi) <= bound, "{x} {y} {p}");
                }
            }
        }
    }

    #[test]
    fn distinguished_points_embed_isometrically() {
        // substituting the distinguished points of [0, 1] for the bases
        for depth in 0..=4 {
            let space = IteratedTensor::new(UnitInterval, depth);
            let words = enumerate_words(Alphabet::Bi, depth);
            let lift =
                |w: &AddressWord| (w.letters().to_vec(), UnitInterval.distinguished(w.base()));
            for w in &words {
                for v in &words {
                    assert_eq!(
                        space.distance(&lift(w), &lift(v)),
                        word_distance(w, v).unwrap()
                    );
                }
            }
        }
    }
}
