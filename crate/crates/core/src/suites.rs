//! Named verification suites, as run by `coalg verify`.
//!
//! Every suite is a list of named checks, each counting how many instances
//! passed and failed and keeping the first failure. Checks are reported in
//! sorted order so that output does not depend on evaluation order.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::address::{
    embed, enumerate_words, fold_dyadic, oracle_distance_table, word_distance, AddressError,
    AddressWord, MAX_ORACLE_DEPTH_BI, MAX_ORACLE_DEPTH_TRI,
};
use crate::alphabet::{Alphabet, Base};
use crate::dyadic::Dyadic;
use crate::experiments::{
    discontinuity_witness_bip, discontinuity_witness_trip, lipschitz_table, lipschitz_table_with,
    triangle_g_claims, triangle_g_coordinate, verify_claims_ab, ClaimsReport, ExperimentError,
    IntervalE, TriangleE, TrianglePoint, MAX_FAMILY_INDEX,
};
use crate::morphisms::{
    algebra_fold, check_algebra_square, check_coalgebra_square, iterate_unbarred, Algebra, BipAlg,
    Coalgebra, MorphismError, TripAlg,
};
use crate::space::{random_pointed_space, FinitePointedSpace};
use crate::tensor::{check_map_property, MapProperty, PointedMap};

/// Largest tri-pointed depth used by the exhaustive word suites.
pub const TRI_EXHAUSTIVE_DEPTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error("unknown suite `{0}`")]
    Unknown(String),
    #[error("{what} = {value} exceeds the cap {cap}")]
    Cap {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error(transparent)]
    Address(#[from] AddressError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Experiment(#[from] ExperimentError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    MetricAxioms,
    IsometryCk,
    Oracle,
    Cauchy,
    Squares,
    ClaimsAb,
    Lipschitz,
    Discontinuity,
    TensorMaps,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::MetricAxioms,
        Suite::IsometryCk,
        Suite::Oracle,
        Suite::Cauchy,
        Suite::Squares,
        Suite::ClaimsAb,
        Suite::Lipschitz,
        Suite::Discontinuity,
        Suite::TensorMaps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MetricAxioms => "metric-axioms",
            Suite::IsometryCk => "isometry-ck",
            Suite::Oracle => "oracle",
            Suite::Cauchy => "cauchy",
            Suite::Squares => "squares",
            Suite::ClaimsAb => "claims-ab",
            Suite::Lipschitz => "lipschitz",
            Suite::Discontinuity => "discontinuity",
            Suite::TensorMaps => "tensor-maps",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A suite name, or `all`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    One(Suite),
    All,
}

impl FromStr for SuiteSelection {
    type Err = SuiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "all" {
            return Ok(SuiteSelection::All);
        }
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .map(SuiteSelection::One)
            .ok_or_else(|| SuiteError::Unknown(s.to_string()))
    }
}

/// Caps for a run. `None` means the suite's default.
#[derive(Debug, Clone, Default)]
pub struct SuiteParams {
    pub depth: Option<usize>,
    pub nmax: Option<usize>,
    pub samples: Option<usize>,
    pub seed: u64,
}

/// One named check inside a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub passed: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn new(suite: Suite, name: impl Into<String>) -> Self {
        CheckResult {
            suite,
            name: name.into(),
            passed: 0,
            failed: 0,
            first_failure: None,
        }
    }

    /// Records one instance; `detail` is only evaluated on failure.
    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(detail());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let total = self.passed + self.failed;
        if self.ok() {
            write!(f, "{}/{}: pass ({} checked)", self.suite, self.name, total)
        } else {
            write!(
                f,
                "{}/{}: FAIL ({} of {} failed; first: {})",
                self.suite,
                self.name,
                self.failed,
                total,
                self.first_failure.as_deref().unwrap_or("?")
            )
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    fn sorted(mut self) -> Self {
        self.checks
            .sort_by(|a, b| (a.suite, &a.name).cmp(&(b.suite, &b.name)));
        self
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        Ok(())
    }
}

pub fn run(selection: SuiteSelection, params: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    let suites: Vec<Suite> = match selection {
        SuiteSelection::One(s) => vec![s],
        SuiteSelection::All => Suite::ALL.to_vec(),
    };
    let mut report = SuiteReport::default();
    for suite in suites {
        report.checks.extend(run_suite(suite, params)?.checks);
    }
    Ok(report.sorted())
}

pub fn run_suite(suite: Suite, params: &SuiteParams) -> Result<SuiteReport, SuiteError> {
    let checks = match suite {
        Suite::MetricAxioms => {
            let depth = cap("depth", params.depth.unwrap_or(8), MAX_ORACLE_DEPTH_BI)?;
            metric_axioms(depth, depth.min(TRI_EXHAUSTIVE_DEPTH))?
        }
        Suite::IsometryCk => {
            let depth = cap("depth", params.depth.unwrap_or(10), 12)?;
            vec![isometry_ck(depth)?]
        }
        Suite::Oracle => {
            let depth = cap("depth", params.depth.unwrap_or(8), MAX_ORACLE_DEPTH_BI)?;
            oracle_equivalence(
                depth,
                depth.min(TRI_EXHAUSTIVE_DEPTH).min(MAX_ORACLE_DEPTH_TRI),
            )?
        }
        Suite::Cauchy => {
            let depth = cap("depth", params.depth.unwrap_or(20), 64)?;
            cauchy_rate(depth, params.samples.unwrap_or(100), params.seed)?
        }
        Suite::Squares => {
            let depth = cap("depth", params.depth.unwrap_or(12), 32)?;
            commuting_squares(depth, params.samples.unwrap_or(100), params.seed, 6)?
        }
        Suite::ClaimsAb => {
            let n = cap("nmax", params.nmax.unwrap_or(10), MAX_FAMILY_INDEX)?;
            claims(n, params.samples.unwrap_or(8))?
        }
        Suite::Lipschitz => {
            let n = cap("nmax", params.nmax.unwrap_or(10), MAX_FAMILY_INDEX)?;
            lipschitz(n)?
        }
        Suite::Discontinuity => {
            let n = cap("nmax", params.nmax.unwrap_or(10), 64)?;
            discontinuity(n)?
        }
        Suite::TensorMaps => tensor_maps(params.samples.unwrap_or(1000), params.seed)?,
    };
    Ok(SuiteReport { checks }.sorted())
}

fn cap(what: &'static str, value: usize, cap: usize) -> Result<usize, SuiteError> {
    if value > cap {
        Err(SuiteError::Cap { what, value, cap })
    } else {
        Ok(value)
    }
}

/// All pairwise word distances at one depth, in units of `2^-depth`.
pub fn distance_matrix(alphabet: Alphabet, depth: usize) -> Result<Vec<Vec<u64>>, AddressError> {
    let words = enumerate_words(alphabet, depth);
    words
        .iter()
        .map(|w| {
            words
                .iter()
                .map(|v| {
                    let d = word_distance(w, v)?;
                    Ok(d.to_units(depth as u32)
                        .expect("distances at depth k are multiples of 2^-k"))
                })
                .collect()
        })
        .collect()
}

/// Symmetry, identity, one-bound, distinguished distances and the triangle
/// inequality on every word of depth `0..=bi_depth` / `0..=tri_depth`.
///
/// The triangle inequality is checked on one representative per class of
/// words at distance 0, after checking that equivalent words have identical
/// rows; together these cover every triple of words.
pub fn metric_axioms(bi_depth: usize, tri_depth: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let s = Suite::MetricAxioms;
    let mut symmetry = CheckResult::new(s, "symmetry");
    let mut identity = CheckResult::new(s, "self-distance");
    let mut bounded = CheckResult::new(s, "one-bounded");
    let mut classes = CheckResult::new(s, "zero-distance-rows");
    let mut triangle = CheckResult::new(s, "triangle");
    let mut distinguished = CheckResult::new(s, "distinguished-distance");
    for (alphabet, max_depth) in [(Alphabet::Bi, bi_depth), (Alphabet::Tri, tri_depth)] {
        for depth in 0..=max_depth {
            let words = enumerate_words(alphabet, depth);
            let m = distance_matrix(alphabet, depth)?;
            let one = 1u64 << depth;
            let n = words.len();
            let name = |i: usize, j: usize| format!("{} {}", words[i], words[j]);
            for i in 0..n {
                identity.record(m[i][i] == 0, || words[i].to_string());
                for j in 0..n {
                    symmetry.record(m[i][j] == m[j][i], || name(i, j));
                    bounded.record(m[i][j] <= one, || name(i, j));
                }
            }
            let mut reps: Vec<usize> = Vec::new();
            for i in 0..n {
                match reps.iter().find(|&&r| m[r][i] == 0) {
                    Some(&r) => classes.record(m[r] == m[i], || name(r, i)),
                    None => reps.push(i),
                }
            }
            for &x in &reps {
                for &y in &reps {
                    let xy = m[x][y];
                    for &z in &reps {
                        let ok = m[x][z] <= xy + m[y][z];
                        if ok {
                            triangle.passed += 1;
                        } else {
                            triangle.record(false, || {
                                format!("{} {} {}", words[x], words[y], words[z])
                            });
                        }
                    }
                }
            }
            let points: Vec<AddressWord> = alphabet
                .bases()
                .iter()
                .map(|&b| embed(&AddressWord::point(b), depth))
                .collect::<Result<_, _>>()?;
            for (i, p) in points.iter().enumerate() {
                for q in &points[i + 1..] {
                    let d = word_distance(p, q)?;
                    distinguished.record(d == Dyadic::one(), || format!("{p} {q}: {d}"));
                }
            }
        }
    }
    Ok(vec![
        symmetry,
        identity,
        bounded,
        classes,
        triangle,
        distinguished,
    ])
}

/// `|c_k(w) − c_k(v)| = d(w, v)` for every pair of bi-pointed words of each
/// depth `k ≤ max_depth`.
pub fn isometry_ck(max_depth: usize) -> Result<CheckResult, SuiteError> {
    let mut check = CheckResult::new(Suite::IsometryCk, "fold-isometry");
    for depth in 0..=max_depth {
        let words = enumerate_words(Alphabet::Bi, depth);
        let folds: Vec<Dyadic> = words.iter().map(fold_dyadic).collect::<Result<_, _>>()?;
        for i in 0..words.len() {
            for j in i..words.len() {
                let d = word_distance(&words[i], &words[j])?;
                let f = folds[i].abs_diff(&folds[j]);
                check.record(d == f, || {
                    format!("{} {}: {} vs {}", words[i], words[j], d, f)
                });
            }
        }
    }
    Ok(check)
}

/// Word distances against the shortest-path table, every pair at every depth.
pub fn oracle_equivalence(
    bi_depth: usize,
    tri_depth: usize,
) -> Result<Vec<CheckResult>, SuiteError> {
    let mut bi = CheckResult::new(Suite::Oracle, "bi");
    let mut tri = CheckResult::new(Suite::Oracle, "tri");
    for (alphabet, max_depth, check) in [
        (Alphabet::Bi, bi_depth, &mut bi),
        (Alphabet::Tri, tri_depth, &mut tri),
    ] {
        for depth in 0..=max_depth {
            let table = oracle_distance_table(alphabet, depth)?;
            let words = table.words();
            for i in 0..words.len() {
                for j in 0..words.len() {
                    let d = word_distance(&words[i], &words[j])?;
                    let o = table.distance(i, j);
                    check.record(d == o, || {
                        format!("{} {}: {} vs oracle {}", words[i], words[j], d, o)
                    });
                }
            }
        }
    }
    Ok(vec![bi, tri])
}

/// `n` seeds `k/2^e` with `e ≤ 20`, plus the endpoints.
pub fn dyadic_seeds(n: usize, seed: u64) -> Vec<Dyadic> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = vec![Dyadic::zero(), Dyadic::one()];
    while out.len() < n {
        let e = rng.random_range(1..=20u32);
        let k = rng.random_range(0..=(1i64 << e));
        out.push(Dyadic::new(k, e));
    }
    out.truncate(n);
    out
}

fn truncations<C: Coalgebra>(
    c: &C,
    x: &C::Point,
    depth: usize,
) -> Result<Vec<AddressWord>, SuiteError> {
    let (letters, _) = iterate_unbarred(c, x, depth)?;
    (1..=depth)
        .map(|p| Ok(AddressWord::closed(c.alphabet(), letters[..p].to_vec())?))
        .collect()
}

fn cauchy_check<C: Coalgebra>(
    check: &mut CheckResult,
    c: &C,
    x: &C::Point,
    depth: usize,
) -> Result<(), SuiteError> {
    let thetas = truncations(c, x, depth)?;
    for p in 1..=depth {
        let bound = Dyadic::pow2_neg(p as u32);
        for q in p + 1..=depth {
            let d = word_distance(&thetas[p - 1], &thetas[q - 1])?;
            check.record(d <= bound, || format!("x={x} p={p} q={q}: {d}"));
        }
    }
    Ok(())
}

/// `d(θ_p, θ_q) ≤ 2^-p` for `p < q ≤ depth`, for both builtin coalgebras.
pub fn cauchy_rate(depth: usize, seeds: usize, seed: u64) -> Result<Vec<CheckResult>, SuiteError> {
    let mut interval = CheckResult::new(Suite::Cauchy, "interval-e");
    let mut triangle = CheckResult::new(Suite::Cauchy, "triangle-e");
    for x in dyadic_seeds(seeds, seed) {
        cauchy_check(&mut interval, &IntervalE, &x, depth)?;
        cauchy_check(&mut triangle, &TriangleE, &TrianglePoint::Bottom(x), depth)?;
    }
    cauchy_check(&mut triangle, &TriangleE, &TrianglePoint::Apex, depth)?;
    Ok(vec![interval, triangle])
}

fn algebra_square_check<A: Algebra>(
    check: &mut CheckResult,
    a: &A,
    depth: usize,
) -> Result<(), SuiteError> {
    for k in 0..=depth {
        for w in enumerate_words(a.alphabet(), k) {
            for &m in a.alphabet().letters() {
                let ok = check_algebra_square(a, m, &w)?;
                check.record(ok, || format!("{m} · {w}"));
            }
        }
    }
    Ok(())
}

fn fold_class_check<A: Algebra>(
    check: &mut CheckResult,
    a: &A,
    depth: usize,
) -> Result<(), SuiteError> {
    for k in 0..=depth {
        let table = oracle_distance_table(a.alphabet(), k)?;
        let words = table.words();
        let mut seen: Vec<Option<(usize, A::Point)>> = vec![None; table.point_count()];
        for (i, w) in words.iter().enumerate() {
            let value = algebra_fold(a, w)?;
            match &seen[table.point_of(i)] {
                Some((j, v)) => check.record(*v == value, || format!("{} {}", words[*j], w)),
                None => seen[table.point_of(i)] = Some((i, value)),
            }
        }
    }
    Ok(())
}

/// Coalgebra square defects `≤ 2/2^{p−1}`, algebra squares on every word, and
/// folds constant on classes of equivalent words.
pub fn commuting_squares(
    depth: usize,
    seeds: usize,
    seed: u64,
    word_depth: usize,
) -> Result<Vec<CheckResult>, SuiteError> {
    let s = Suite::Squares;
    let mut interval = CheckResult::new(s, "coalgebra-interval-e");
    let mut triangle = CheckResult::new(s, "coalgebra-triangle-e");
    for x in dyadic_seeds(seeds, seed) {
        for p in 2..=depth {
            let bound = Dyadic::pow2_neg(p as u32 - 2);
            let d = check_coalgebra_square(&IntervalE, &x, p)?;
            interval.record(d <= bound, || format!("x={x} p={p}: {d}"));
            let t = TrianglePoint::Bottom(x.clone());
            let d = check_coalgebra_square(&TriangleE, &t, p)?;
            triangle.record(d <= bound, || format!("x={t} p={p}: {d}"));
        }
    }
    for p in 2..=depth {
        let d = check_coalgebra_square(&TriangleE, &TrianglePoint::Apex, p)?;
        triangle.record(d.is_zero(), || format!("apex p={p}: {d}"));
    }
    let mut bip = CheckResult::new(s, "algebra-bip-alg");
    let mut trip = CheckResult::new(s, "algebra-trip-alg");
    algebra_square_check(&mut bip, &BipAlg, word_depth)?;
    algebra_square_check(&mut trip, &TripAlg, word_depth)?;
    let mut bip_classes = CheckResult::new(s, "fold-classes-bip-alg");
    let mut trip_classes = CheckResult::new(s, "fold-classes-trip-alg");
    fold_class_check(
        &mut bip_classes,
        &BipAlg,
        word_depth.min(MAX_ORACLE_DEPTH_BI).min(5),
    )?;
    fold_class_check(
        &mut trip_classes,
        &TripAlg,
        word_depth.min(MAX_ORACLE_DEPTH_TRI),
    )?;
    Ok(vec![
        interval,
        triangle,
        bip,
        trip,
        bip_classes,
        trip_classes,
    ])
}

fn claims_check(name: &str, report: &ClaimsReport) -> CheckResult {
    let mut check = CheckResult::new(Suite::ClaimsAb, name);
    for sample in &report.samples {
        check.record(sample.passed(), || sample.to_string());
    }
    check
}

/// The value laws on `I_n` and `J_n` for `f` and for `g`.
pub fn claims(n_max: usize, interior: usize) -> Result<Vec<CheckResult>, SuiteError> {
    Ok(vec![
        claims_check("f", &verify_claims_ab(n_max, interior)?),
        claims_check("g", &triangle_g_claims(n_max, interior)?),
    ])
}

/// The Lipschitz table for `f`, and agreement of the `g` table with it.
pub fn lipschitz(n_max: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let rows = lipschitz_table(n_max)?;
    let mut table = CheckResult::new(Suite::Lipschitz, "ratios");
    for row in &rows {
        let expected = Dyadic::one().scale_pow2(row.n as i64 + 1);
        table.record(row.ratio == expected, || {
            format!("n={}: {}", row.n, row.ratio)
        });
    }
    let mut increasing = CheckResult::new(Suite::Lipschitz, "strictly-increasing");
    for pair in rows.windows(2) {
        increasing.record(pair[0].ratio < pair[1].ratio, || format!("n={}", pair[1].n));
    }
    let g_rows = lipschitz_table_with(n_max, triangle_g_coordinate)?;
    let mut same = CheckResult::new(Suite::Lipschitz, "g-matches-f");
    for (a, b) in rows.iter().zip(&g_rows) {
        same.record(a == b, || format!("n={}: {} vs {}", a.n, a.ratio, b.ratio));
    }
    Ok(vec![table, increasing, same])
}

/// Both witnesses for `n = 1..=n_max`: input distances `1/2ⁿ` and
/// `1/2^{n+1}`, image distance 1.
pub fn discontinuity(n_max: usize) -> Result<Vec<CheckResult>, SuiteError> {
    let mut bip = CheckResult::new(Suite::Discontinuity, "bip-alg");
    let mut trip = CheckResult::new(Suite::Discontinuity, "trip-alg");
    for n in 1..=n_max {
        let w = discontinuity_witness_bip(n)?;
        let near = &Dyadic::one() - &Dyadic::pow2_neg(n as u32);
        bip.record(
            w.inputs == (Dyadic::one(), near)
                && w.input_distance == Dyadic::pow2_neg(n as u32)
                && w.images == (Base::Top, Base::Bot)
                && w.image_distance == Dyadic::one(),
            || format!("n={n}: {w:?}"),
        );
        let w = discontinuity_witness_trip(n)?;
        trip.record(
            w.input_distance == Dyadic::pow2_neg(n as u32 + 1)
                && w.images == (Base::T, Base::L)
                && w.image_distance == Dyadic::one(),
            || format!("n={n}: {w:?}"),
        );
    }
    Ok(vec![bip, trip])
}

fn random_alphabet<R: Rng>(rng: &mut R) -> Alphabet {
    if rng.random_bool(0.5) {
        Alphabet::Bi
    } else {
        Alphabet::Tri
    }
}

fn random_size<R: Rng>(rng: &mut R, alphabet: Alphabet) -> usize {
    rng.random_range(alphabet.arity()..=6)
}

/// Pointwise maximum of two metrics on the same labelled points: again a
/// valid pointed metric, and at least as large as either.
fn pointwise_max(a: &FinitePointedSpace, b: &FinitePointedSpace) -> FinitePointedSpace {
    let dist = a
        .table()
        .iter()
        .zip(b.table())
        .map(|(ra, rb)| {
            ra.iter()
                .zip(rb)
                .map(|(x, y)| x.clone().max(y.clone()))
                .collect()
        })
        .collect();
    FinitePointedSpace::new(
        a.labels().to_vec(),
        a.distinguished_indices().to_vec(),
        dist,
    )
    .expect("same shape as the inputs")
}

/// The subspace on `keep` (which must contain the distinguished points, in
/// order, first).
fn subspace(space: &FinitePointedSpace, keep: &[usize]) -> FinitePointedSpace {
    let k = space.distinguished_indices().len();
    let dist = keep
        .iter()
        .map(|&i| keep.iter().map(|&j| space.get(i, j).clone()).collect())
        .collect();
    let labels = keep.iter().map(|&i| space.labels()[i].clone()).collect();
    FinitePointedSpace::new(labels, (0..k).collect(), dist).expect("square by construction")
}

/// Randomised checks that `F f` inherits being short, `k`-Lipschitz, or an
/// isometric embedding from `f`. Trials cycle through a random map (Lipschitz
/// with its best constant, and short whenever it happens to be), the identity
/// from a larger metric (short), and a subspace inclusion (isometric).
pub fn tensor_maps(trials: usize, seed: u64) -> Result<Vec<CheckResult>, SuiteError> {
    let s = Suite::TensorMaps;
    let mut short = CheckResult::new(s, "short");
    let mut lipschitz = CheckResult::new(s, "lipschitz");
    let mut isometric = CheckResult::new(s, "isometric-embedding");
    let mut rng = StdRng::seed_from_u64(seed);
    for trial in 0..trials {
        let alphabet = random_alphabet(&mut rng);
        let k = alphabet.arity();
        let f = match trial % 3 {
            0 => {
                let (m, n) = (
                    random_size(&mut rng, alphabet),
                    random_size(&mut rng, alphabet),
                );
                let dom = random_pointed_space(&mut rng, alphabet, m);
                let cod = random_pointed_space(&mut rng, alphabet, n);
                let image = (0..dom.len())
                    .map(|i| {
                        if i < k {
                            i
                        } else {
                            rng.random_range(0..cod.len())
                        }
                    })
                    .collect();
                PointedMap::new(dom, cod, image).expect("distinguished points are fixed")
            }
            1 => {
                let size = random_size(&mut rng, alphabet);
                let cod = random_pointed_space(&mut rng, alphabet, size);
                let other = random_pointed_space(&mut rng, alphabet, size);
                let dom = pointwise_max(&cod, &other);
                PointedMap::new(dom, cod, (0..size).collect()).expect("identity map")
            }
            _ => {
                let size = random_size(&mut rng, alphabet);
                let cod = random_pointed_space(&mut rng, alphabet, size);
                let mut keep: Vec<usize> = (0..k).collect();
                keep.extend((k..size).filter(|_| rng.random_bool(0.5)));
                let dom = subspace(&cod, &keep);
                PointedMap::new(dom, cod, keep).expect("inclusion fixes the distinguished points")
            }
        };
        let label = |what: &str| format!("trial {trial} ({what})");

        let r = check_map_property(&f, &MapProperty::Short);
        if r.map_holds {
            short.record(r.tensor_holds, || {
                label(r.tensor_witness.as_deref().unwrap_or(""))
            });
        }
        let best = r
            .map_best
            .clone()
            .unwrap_or_else(|| BigRational::from_integer(0.into()));
        let r = check_map_property(&f, &MapProperty::Lipschitz(best.clone()));
        let tensor_ok = r.tensor_holds && r.tensor_best.as_ref().is_some_and(|t| *t <= best);
        lipschitz.record(tensor_ok, || {
            label(&format!("best {best}, F f {:?}", r.tensor_best))
        });
        let r = check_map_property(&f, &MapProperty::IsometricEmbedding);
        if r.map_holds {
            isometric.record(r.tensor_holds, || {
                label(r.tensor_witness.as_deref().unwrap_or(""))
            });
        }
    }
    Ok(vec![short, lipschitz, isometric])
}
