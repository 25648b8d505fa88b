//! One application of the functor: the glued space `M ⊗ X`, its quotient
//! metric, the action on maps, and an exhaustive checker for map properties
//! on finite spaces.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::alphabet::{Alphabet, Base, Gluing, Letter};
use crate::dyadic::Dyadic;
use crate::space::{FinitePointedSpace, PointedMetric};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("letter `{letter}` does not belong to the {expected} alphabet")]
    ArityMismatch { letter: Letter, expected: Alphabet },
    #[error("map sends distinguished point {base} to {found} instead of {expected}")]
    NotPointed {
        base: Base,
        found: String,
        expected: String,
    },
    #[error("map image has {found} entries for {expected} domain points")]
    ImageLength { expected: usize, found: usize },
    #[error("map image index {0} out of range")]
    ImageIndex(usize),
    #[error("domain and codomain have different arities")]
    MixedArity,
}

/// `letter ⊗ point`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorPoint<P> {
    pub letter: Letter,
    pub point: P,
}

impl<P> TensorPoint<P> {
    pub fn new(letter: Letter, point: P) -> Self {
        TensorPoint { letter, point }
    }
}

impl<P: fmt::Display> fmt::Display for TensorPoint<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗{}", self.letter, self.point)
    }
}

/// Which vertices are identified between copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingTable {
    alphabet: Alphabet,
}

impl GluingTable {
    pub fn standard(alphabet: Alphabet) -> Self {
        GluingTable { alphabet }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn entries(&self) -> &'static [Gluing] {
        self.alphabet.gluings()
    }

    /// `(u, v)` with `m ⊗ u = n ⊗ v`, for `m != n`.
    pub fn shared(&self, m: Letter, n: Letter) -> (Base, Base) {
        self.alphabet
            .shared_vertex(m, n)
            .expect("distinct letters of one alphabet always share a vertex")
    }
}

/// Distance between points in two different copies `m ≠ n`.
///
/// `to_x(u)` is `d(x, u)` inside copy `m`, `to_y(v)` is `d(v, y)` inside copy
/// `n`, and `between(s, t)` is the distance of two distinguished points of X.
/// The direct route crosses the shared vertex of `m` and `n`; for three
/// letters there is also a detour through the remaining copy.
pub(crate) fn cross_distance(
    glue: &GluingTable,
    m: Letter,
    n: Letter,
    to_x: impl Fn(Base) -> Dyadic,
    to_y: impl Fn(Base) -> Dyadic,
    between: impl Fn(Base, Base) -> Dyadic,
) -> Dyadic {
    debug_assert_ne!(m, n);
    let (u, v) = glue.shared(m, n);
    let mut best = &to_x(u) + &to_y(v);
    for &o in glue.alphabet().letters() {
        if o == m || o == n {
            continue;
        }
        let (u2, s) = glue.shared(m, o);
        let (v2, t) = glue.shared(n, o);
        let detour = &(&to_x(u2) + &between(s, t)) + &to_y(v2);
        best = best.min(detour);
    }
    best.half()
}

fn check_letter(alphabet: Alphabet, letter: Letter) -> Result<(), TensorError> {
    if letter.alphabet() == alphabet {
        Ok(())
    } else {
        Err(TensorError::ArityMismatch {
            letter,
            expected: alphabet,
        })
    }
}

fn tensor_dist_with<S: PointedMetric>(
    space: &S,
    glue: &GluingTable,
    p: &TensorPoint<S::Point>,
    q: &TensorPoint<S::Point>,
) -> Result<Dyadic, TensorError> {
    let alphabet = glue.alphabet();
    check_letter(alphabet, p.letter)?;
    check_letter(alphabet, q.letter)?;
    if p.letter == q.letter {
        return Ok(space.distance(&p.point, &q.point).half());
    }
    Ok(cross_distance(
        glue,
        p.letter,
        q.letter,
        |u| space.distance(&p.point, &space.distinguished(u)),
        |v| space.distance(&space.distinguished(v), &q.point),
        |s, t| space.distance(&space.distinguished(s), &space.distinguished(t)),
    ))
}

/// Quotient distance on `M₂ ⊗ X`.
pub fn tensor_dist_2<S: PointedMetric>(
    space: &S,
    p: &TensorPoint<S::Point>,
    q: &TensorPoint<S::Point>,
) -> Result<Dyadic, TensorError> {
    if space.alphabet() != Alphabet::Bi {
        return Err(TensorError::MixedArity);
    }
    tensor_dist_with(space, &GluingTable::standard(Alphabet::Bi), p, q)
}

/// Quotient distance on `M₃ ⊗ X`.
pub fn tensor_dist_3<S: PointedMetric>(
    space: &S,
    glue: &GluingTable,
    p: &TensorPoint<S::Point>,
    q: &TensorPoint<S::Point>,
) -> Result<Dyadic, TensorError> {
    if space.alphabet() != Alphabet::Tri || glue.alphabet() != Alphabet::Tri {
        return Err(TensorError::MixedArity);
    }
    tensor_dist_with(space, glue, p, q)
}

/// Dispatches on the space's arity.
pub fn tensor_dist<S: PointedMetric>(
    space: &S,
    p: &TensorPoint<S::Point>,
    q: &TensorPoint<S::Point>,
) -> Result<Dyadic, TensorError> {
    tensor_dist_with(space, &GluingTable::standard(space.alphabet()), p, q)
}

/// `M ⊗ X` as a pointed metric space in its own right.
#[derive(Debug, Clone)]
pub struct Tensor<S> {
    inner: S,
}

impl<S: PointedMetric> Tensor<S> {
    pub fn new(inner: S) -> Self {
        Tensor { inner }
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }

    /// Every raw pair `(m, x)`; glued pairs appear twice and sit at distance 0.
    pub fn raw_points(&self, inner_points: &[S::Point]) -> Vec<TensorPoint<S::Point>> {
        self.inner
            .alphabet()
            .letters()
            .iter()
            .flat_map(|&m| {
                inner_points
                    .iter()
                    .map(move |x| TensorPoint::new(m, x.clone()))
            })
            .collect()
    }
}

impl<S: PointedMetric> PointedMetric for Tensor<S> {
    type Point = TensorPoint<S::Point>;

    fn alphabet(&self) -> Alphabet {
        self.inner.alphabet()
    }

    fn distinguished(&self, base: Base) -> Self::Point {
        TensorPoint::new(base.extension_letter(), self.inner.distinguished(base))
    }

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Dyadic {
        tensor_dist(&self.inner, x, y).expect("tensor points carry letters of the space's alphabet")
    }
}

/// `Mᵏ ⊗ X` evaluated by plain structural recursion on the one-step formulas.
///
/// Exponential in the depth; intended as an independent reference for the
/// word metric and for carriers other than the initial object.
#[derive(Debug, Clone)]
pub struct IteratedTensor<S> {
    inner: S,
    depth: usize,
}

impl<S: PointedMetric> IteratedTensor<S> {
    pub fn new(inner: S, depth: usize) -> Self {
        IteratedTensor { inner, depth }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn distinguished_at(&self, depth: usize, base: Base) -> (Vec<Letter>, S::Point) {
        (
            vec![base.extension_letter(); depth],
            self.inner.distinguished(base),
        )
    }

    fn dist_at(
        &self,
        depth: usize,
        xl: &[Letter],
        xp: &S::Point,
        yl: &[Letter],
        yp: &S::Point,
    ) -> Dyadic {
        if depth == 0 {
            return self.inner.distance(xp, yp);
        }
        let (m, n) = (xl[0], yl[0]);
        if m == n {
            return self.dist_at(depth - 1, &xl[1..], xp, &yl[1..], yp).half();
        }
        let glue = GluingTable::standard(self.inner.alphabet());
        cross_distance(
            &glue,
            m,
            n,
            |u| {
                let (dl, dp) = self.distinguished_at(depth - 1, u);
                self.dist_at(depth - 1, &xl[1..], xp, &dl, &dp)
            },
            |v| {
                let (dl, dp) = self.distinguished_at(depth - 1, v);
                self.dist_at(depth - 1, &dl, &dp, &yl[1..], yp)
            },
            |s, t| {
                let (sl, sp) = self.distinguished_at(depth - 1, s);
                let (tl, tp) = self.distinguished_at(depth - 1, t);
                self.dist_at(depth - 1, &sl, &sp, &tl, &tp)
            },
        )
    }
}

impl<S: PointedMetric> PointedMetric for IteratedTensor<S> {
    type Point = (Vec<Letter>, S::Point);

    fn alphabet(&self) -> Alphabet {
        self.inner.alphabet()
    }

    fn distinguished(&self, base: Base) -> Self::Point {
        self.distinguished_at(self.depth, base)
    }

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Dyadic {
        assert_eq!(x.0.len(), self.depth, "point has the wrong depth");
        assert_eq!(y.0.len(), self.depth, "point has the wrong depth");
        self.dist_at(self.depth, &x.0, &x.1, &y.0, &y.1)
    }
}

/// `F f (m ⊗ x) = m ⊗ f(x)`, after checking that `f` preserves distinguished points.
pub fn functor_apply<X, Y, F>(
    domain: &X,
    codomain: &Y,
    f: F,
    p: &TensorPoint<X::Point>,
) -> Result<TensorPoint<Y::Point>, TensorError>
where
    X: PointedMetric,
    Y: PointedMetric,
    F: Fn(&X::Point) -> Y::Point,
{
    if domain.alphabet() != codomain.alphabet() {
        return Err(TensorError::MixedArity);
    }
    check_letter(domain.alphabet(), p.letter)?;
    for &base in domain.alphabet().bases() {
        let image = f(&domain.distinguished(base));
        let expected = codomain.distinguished(base);
        if image != expected {
            return Err(TensorError::NotPointed {
                base,
                found: format!("{image:?}"),
                expected: format!("{expected:?}"),
            });
        }
    }
    Ok(TensorPoint::new(p.letter, f(&p.point)))
}

/// A distinguished-point-preserving map between finite spaces.
#[derive(Debug, Clone)]
pub struct PointedMap {
    domain: FinitePointedSpace,
    codomain: FinitePointedSpace,
    image: Vec<usize>,
}

impl PointedMap {
    pub fn new(
        domain: FinitePointedSpace,
        codomain: FinitePointedSpace,
        image: Vec<usize>,
    ) -> Result<Self, TensorError> {
        if domain.alphabet() != codomain.alphabet() {
            return Err(TensorError::MixedArity);
        }
        if image.len() != domain.len() {
            return Err(TensorError::ImageLength {
                expected: domain.len(),
                found: image.len(),
            });
        }
        if let Some(&bad) = image.iter().find(|&&i| i >= codomain.len()) {
            return Err(TensorError::ImageIndex(bad));
        }
        for &base in domain.alphabet().bases() {
            let found = image[domain.distinguished(base)];
            let expected = codomain.distinguished(base);
            if found != expected {
                return Err(TensorError::NotPointed {
                    base,
                    found: codomain.labels()[found].clone(),
                    expected: codomain.labels()[expected].clone(),
                });
            }
        }
        Ok(PointedMap {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(space: FinitePointedSpace) -> Self {
        let image = (0..space.len()).collect();
        PointedMap {
            domain: space.clone(),
            codomain: space,
            image,
        }
    }

    pub fn domain(&self) -> &FinitePointedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &FinitePointedSpace {
        &self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapProperty {
    Short,
    Lipschitz(BigRational),
    IsometricEmbedding,
}

/// Outcome of an exhaustive property check on `f` and on `F f`.
#[derive(Debug, Clone)]
pub struct MapReport {
    pub property: MapProperty,
    pub map_holds: bool,
    pub tensor_holds: bool,
    /// Smallest Lipschitz constant; `None` if some pair at distance 0 is
    /// pulled apart (not even a function on the quotient).
    pub map_best: Option<BigRational>,
    pub tensor_best: Option<BigRational>,
    pub map_witness: Option<String>,
    pub tensor_witness: Option<String>,
}

struct PairScan {
    holds: bool,
    best: Option<BigRational>,
    witness: Option<String>,
}

fn scan_pairs<P: fmt::Debug>(
    points: &[P],
    d_dom: impl Fn(&P, &P) -> Dyadic,
    d_img: impl Fn(&P, &P) -> Dyadic,
    prop: &MapProperty,
) -> PairScan {
    let mut holds = true;
    let mut witness = None;
    let mut best = Some(BigRational::zero());
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            let a = d_dom(x, y);
            let b = d_img(x, y);
            let ok = match prop {
                MapProperty::Short => b <= a,
                MapProperty::Lipschitz(k) => b.to_ratio() <= k * a.to_ratio(),
                MapProperty::IsometricEmbedding => a == b,
            };
            if !ok && holds {
                holds = false;
                witness = Some(format!("{x:?}, {y:?}: d = {a}, image d = {b}"));
            }
            if a.is_zero() {
                if !b.is_zero() {
                    best = None;
                }
            } else if let Some(current) = best.as_mut() {
                let ratio = b.to_ratio() / a.to_ratio();
                if ratio > *current {
                    *current = ratio;
                }
            }
        }
    }
    PairScan {
        holds,
        best,
        witness,
    }
}

/// Checks `prop` for `f` over all pairs of its domain, then for `F f` over
/// all raw pairs of `M ⊗ X`.
pub fn check_map_property(f: &PointedMap, prop: &MapProperty) -> MapReport {
    let dom = f.domain();
    let cod = f.codomain();
    let points: Vec<usize> = (0..dom.len()).collect();
    let base = scan_pairs(
        &points,
        |x, y| dom.distance(x, y),
        |x, y| cod.distance(&f.apply(*x), &f.apply(*y)),
        prop,
    );

    let tdom = Tensor::new(dom);
    let tcod = Tensor::new(cod);
    let tpoints = tdom.raw_points(&points);
    let lifted = |p: &TensorPoint<usize>| TensorPoint::new(p.letter, f.apply(p.point));
    let tensor = scan_pairs(
        &tpoints,
        |p, q| tdom.distance(p, q),
        |p, q| tcod.distance(&lifted(p), &lifted(q)),
        prop,
    );

    MapReport {
        property: prop.clone(),
        map_holds: base.holds,
        tensor_holds: tensor.holds,
        map_best: base.best,
        tensor_best: tensor.best,
        map_witness: base.witness,
        tensor_witness: tensor.witness,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::UnitInterval;

    fn x0() -> FinitePointedSpace {
        FinitePointedSpace::discrete(Alphabet::Bi)
    }

    fn y0() -> FinitePointedSpace {
        FinitePointedSpace::discrete(Alphabet::Tri)
    }

    fn tp(letter: Letter, space: &FinitePointedSpace, base: Base) -> TensorPoint<usize> {
        TensorPoint::new(letter, space.distinguished(base))
    }

    #[test]
    fn bi_pointed_examples() {
        let x = x0();
        let d = |p, q| tensor_dist_2(&x, &p, &q).unwrap();
        assert_eq!(
            d(tp(Letter::L, &x, Base::Bot), tp(Letter::R, &x, Base::Top)),
            Dyadic::one()
        );
        assert_eq!(
            d(tp(Letter::L, &x, Base::Top), tp(Letter::R, &x, Base::Bot)),
            Dyadic::zero()
        );
        assert_eq!(
            d(tp(Letter::L, &x, Base::Bot), tp(Letter::L, &x, Base::Top)),
            Dyadic::new(1, 1)
        );
    }

    #[test]
    fn tri_pointed_examples() {
        let y = y0();
        let g = GluingTable::standard(Alphabet::Tri);
        let d = |p, q| tensor_dist_3(&y, &g, &p, &q).unwrap();
        assert_eq!(
            d(tp(Letter::A, &y, Base::L), tp(Letter::B, &y, Base::T)),
            Dyadic::zero()
        );
        assert_eq!(
            d(tp(Letter::A, &y, Base::T), tp(Letter::B, &y, Base::L)),
            Dyadic::one()
        );
        assert_eq!(
            d(tp(Letter::A, &y, Base::T), tp(Letter::A, &y, Base::L)),
            Dyadic::new(1, 1)
        );
    }

    #[test]
    fn detour_through_third_copy_matches_stated_formula() {
        // d(a⊗x, b⊗y) = ½ min{ d(x,L) + d(T,y), d(x,R) + 1 + d(R,y) } on [0,1]-like data
        let y = y0();
        let g = GluingTable::standard(Alphabet::Tri);
        for &xb in Alphabet::Tri.bases() {
            for &yb in Alphabet::Tri.bases() {
                let x = y.distinguished(xb);
                let yy = y.distinguished(yb);
                let direct = &y.distance(&x, &y.distinguished(Base::L))
                    + &y.distance(&y.distinguished(Base::T), &yy);
                let detour = &(&y.distance(&x, &y.distinguished(Base::R)) + &Dyadic::one())
                    + &y.distance(&y.distinguished(Base::R), &yy);
                let expected = direct.min(detour).half();
                let got = tensor_dist_3(
                    &y,
                    &g,
                    &TensorPoint::new(Letter::A, x),
                    &TensorPoint::new(Letter::B, yy),
                )
                .unwrap();
                assert_eq!(got, expected);
            }
        }
    }

    #[test]
    fn arity_errors() {
        let x = x0();
        let bad = TensorPoint::new(Letter::A, 0);
        let ok = TensorPoint::new(Letter::L, 0);
        assert!(matches!(
            tensor_dist_2(&x, &bad, &ok),
            Err(TensorError::ArityMismatch { .. })
        ));
        let g = GluingTable::standard(Alphabet::Tri);
        assert_eq!(
            tensor_dist_3(&x, &g, &ok, &ok),
            Err(TensorError::MixedArity)
        );
    }

    #[test]
    fn unit_interval_tensor() {
        // l⊗x and r⊗y in M₂⊗[0,1] sit at x/2 and (1+y)/2
        let i = UnitInterval;
        let x = Dyadic::new(3, 2);
        let y = Dyadic::new(1, 3);
        let d = tensor_dist_2(
            &i,
            &TensorPoint::new(Letter::L, x.clone()),
            &TensorPoint::new(Letter::R, y.clone()),
        )
        .unwrap();
        let expected = (&(&Dyadic::one() + &y).half() - &x.half()).abs();
        assert_eq!(d, expected);
    }

    #[test]
    fn functor_on_points() {
        let x = x0();
        let id = |p: &usize| *p;
        let p = tp(Letter::L, &x, Base::Bot);
        assert_eq!(functor_apply(&x, &x, id, &p).unwrap(), p);
        let to_bot = |_: &usize| x.distinguished(Base::Bot);
        assert!(matches!(
            functor_apply(&x, &x, to_bot, &p),
            Err(TensorError::NotPointed {
                base: Base::Top,
                ..
            })
        ));
    }

    #[test]
    fn identity_is_short_and_isometric() {
        let r = check_map_property(&PointedMap::identity(x0()), &MapProperty::Short);
        assert!(r.map_holds && r.tensor_holds);
        let r = check_map_property(
            &PointedMap::identity(y0()),
            &MapProperty::IsometricEmbedding,
        );
        assert!(r.map_holds && r.tensor_holds);
        assert_eq!(r.map_best, Some(BigRational::from_integer(1.into())));
    }

    #[test]
    fn pointed_map_contract() {
        assert!(matches!(
            PointedMap::new(x0(), x0(), vec![0, 0]),
            Err(TensorError::NotPointed { .. })
        ));
        assert!(matches!(
            PointedMap::new(x0(), x0(), vec![0]),
            Err(TensorError::ImageLength { .. })
        ));
        assert!(matches!(
            PointedMap::new(x0(), y0(), vec![0, 1]),
            Err(TensorError::MixedArity)
        ));
    }

    #[test]
    fn tensor_of_finite_space_is_pointed() {
        for space in [x0(), y0()] {
            let t = Tensor::new(&space);
            let bases = space.alphabet().bases();
            for &s in bases {
                for &u in bases {
                    let d = t.distance(&t.distinguished(s), &t.distinguished(u));
                    let expected = if s == u {
                        Dyadic::zero()
                    } else {
                        Dyadic::one()
                    };
                    assert_eq!(d, expected);
                }
            }
        }
    }
}
