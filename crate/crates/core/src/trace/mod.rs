//! Piecewise-linear paths in rational `d`-space and their traces.
//!
//! A [`Path`] is a PL map from `[0,1]` into `Q^d`, stored as canonical
//! breakpoints `(t, point)`. Reparametrizations act on the right by
//! [`Path::reparam`]. The submodules decide reparametrization equivalence
//! ([`regular`]), loop-freeness ([`loops`]) and build thin directed homotopies
//! ([`homotopy`]).

pub mod homotopy;
pub mod loops;
pub mod regular;

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::plmap::{merge_collinear, Reparam};
use crate::rat::{in_unit, int, lerp, Rat};
use crate::stopmap::Interval;

pub type Point = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathPoint {
    pub t: Rat,
    pub point: Point,
}

impl PathPoint {
    pub fn new(t: Rat, point: Point) -> Self {
        PathPoint { t, point }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    dim: usize,
    pts: Vec<PathPoint>,
}

fn graph_collinear(a: &PathPoint, b: &PathPoint, c: &PathPoint) -> bool {
    let (dt1, dt2) = (&b.t - &a.t, &c.t - &b.t);
    a.point
        .iter()
        .zip(&b.point)
        .zip(&c.point)
        .all(|((pa, pb), pc)| (pb - pa) * &dt2 == (pc - pb) * &dt1)
}

impl Path {
    /// Validates raw breakpoints and merges those collinear in the graph
    /// `(t, point)`.
    pub fn new(dim: usize, raw: Vec<PathPoint>) -> Result<Path> {
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(p) = raw.iter().find(|p| p.point.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.point.len(),
            });
        }
        let (Some(first), Some(last)) = (raw.first(), raw.last()) else {
            return Err(Error::BadTimeRange);
        };
        if !first.t.is_zero() || !last.t.is_one() || raw.iter().any(|p| !in_unit(&p.t)) {
            return Err(Error::BadTimeRange);
        }
        if raw.windows(2).any(|w| w[1].t <= w[0].t) {
            return Err(Error::NotIncreasingTime);
        }
        Ok(Path {
            dim,
            pts: merge_collinear(raw, graph_collinear),
        })
    }

    pub fn from_pairs<I>(dim: usize, pairs: I) -> Result<Path>
    where
        I: IntoIterator<Item = (Rat, Point)>,
    {
        Path::new(dim, pairs.into_iter().map(|(t, p)| PathPoint::new(t, p)).collect())
    }

    pub fn constant(point: Point) -> Path {
        Path {
            dim: point.len(),
            pts: vec![
                PathPoint::new(Rat::zero(), point.clone()),
                PathPoint::new(Rat::one(), point),
            ],
        }
    }

    /// The straight path from `from` to `to` at constant speed.
    pub fn segment(from: Point, to: Point) -> Path {
        Path::from_trusted(
            from.len(),
            vec![PathPoint::new(Rat::zero(), from), PathPoint::new(Rat::one(), to)],
        )
    }

    pub(crate) fn from_trusted(dim: usize, mut pts: Vec<PathPoint>) -> Path {
        pts.dedup_by(|b, a| {
            debug_assert!(a.t != b.t || a.point == b.point, "conflicting points at {}", a.t);
            a.t == b.t
        });
        debug_assert!(Path::new(dim, pts.clone()).is_ok(), "invalid internal path {:?}", pts);
        Path {
            dim,
            pts: merge_collinear(pts, graph_collinear),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn breakpoints(&self) -> &[PathPoint] {
        &self.pts
    }

    pub fn times(&self) -> impl Iterator<Item = &Rat> + '_ {
        self.pts.iter().map(|p| &p.t)
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point> + '_ {
        self.pts.iter().map(|p| &p.point)
    }

    pub fn segments(&self) -> impl Iterator<Item = (&PathPoint, &PathPoint)> + '_ {
        self.pts.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn start(&self) -> &Point {
        &self.pts[0].point
    }

    pub fn end(&self) -> &Point {
        &self.pts[self.pts.len() - 1].point
    }

    pub fn is_constant(&self) -> bool {
        self.pts.len() == 2 && self.pts[0].point == self.pts[1].point
    }

    pub fn eval(&self, t: &Rat) -> Result<Point> {
        if !in_unit(t) {
            return Err(Error::OutOfRange(t.to_string()));
        }
        Ok(self.at(t))
    }

    pub(crate) fn at(&self, t: &Rat) -> Point {
        let idx = self.pts.partition_point(|p| p.t <= *t);
        if idx >= self.pts.len() {
            return self.end().clone();
        }
        let (a, b) = (&self.pts[idx - 1], &self.pts[idx]);
        if a.t == *t {
            return a.point.clone();
        }
        let s = (t - &a.t) / (&b.t - &a.t);
        a.point.iter().zip(&b.point).map(|(x, y)| lerp(x, y, &s)).collect()
    }

    /// `self ∘ f`.
    pub fn reparam(&self, f: &Reparam) -> Path {
        let levels: Vec<Rat> = self.times().cloned().collect();
        let grid = f.pullback_grid(&levels);
        let pts = grid
            .into_iter()
            .map(|t| {
                let point = self.at(&f.at(&t));
                PathPoint::new(t, point)
            })
            .collect();
        Path::from_trusted(self.dim, pts)
    }

    /// Maximal intervals on which the path is constant.
    pub fn stop_data(&self) -> PathStopData {
        let stops = self
            .segments()
            .filter(|(a, b)| a.point == b.point)
            .map(|(a, b)| PathStop {
                interval: Interval::new(a.t.clone(), b.t.clone()).expect("times strictly increase"),
                value: a.point.clone(),
            })
            .collect();
        PathStopData {
            stops,
            whole: self.is_constant(),
        }
    }

    /// No stop intervals, or constant.
    pub fn is_regular(&self) -> bool {
        self.is_constant() || self.segments().all(|(a, b)| a.point != b.point)
    }

    /// Coordinatewise weakly increasing, i.e. a directed path for the product
    /// order on `Q^d`.
    pub fn is_directed(&self) -> bool {
        self.segments()
            .all(|(a, b)| a.point.iter().zip(&b.point).all(|(x, y)| x <= y))
    }

    /// `p * q`: `p` on `[0, 1/2]` and `q` on `[1/2, 1]`, each at double speed.
    pub fn concat(&self, other: &Path) -> Result<Path> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch);
        }
        let two = int(2);
        let mut pts: Vec<PathPoint> = self
            .pts
            .iter()
            .map(|p| PathPoint::new(&p.t / &two, p.point.clone()))
            .collect();
        pts.extend(
            other
                .pts
                .iter()
                .skip(1)
                .map(|p| PathPoint::new((Rat::one() + &p.t) / &two, p.point.clone())),
        );
        Ok(Path::from_trusted(self.dim, pts))
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},(", p.t)?;
            for (k, x) in p.point.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "))")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathStop {
    pub interval: Interval,
    pub value: Point,
}

/// Stop intervals of a path. A constant path has the single stop interval
/// `[0,1]` and `whole` set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathStopData {
    pub stops: Vec<PathStop>,
    pub whole: bool,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{fixtures, path, pt, q, random_path, random_reparam};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn canonicalize_examples() {
        let p = path(2, &[("0", &["0", "0"]), ("1/2", &["1/2", "1/2"]), ("1", &["1", "1"])]);
        assert_eq!(p, path(2, &[("0", &["0", "0"]), ("1", &["1", "1"])]));
        assert_eq!(p.breakpoints().len(), 2);
        assert_eq!(fixtures::pz().breakpoints().len(), 3);
        let bad = Path::from_pairs(2, vec![(q("1/2"), pt(&["0", "0"])), (q("1"), pt(&["1", "1"]))]);
        assert_eq!(bad, Err(Error::BadTimeRange));
        let bad = Path::from_pairs(
            1,
            vec![
                (q("0"), pt(&["0"])),
                (q("1/2"), pt(&["1"])),
                (q("1/2"), pt(&["1"])),
                (q("1"), pt(&["0"])),
            ],
        );
        assert_eq!(bad, Err(Error::NotIncreasingTime));
        let bad = Path::from_pairs(2, vec![(q("0"), pt(&["0"])), (q("1"), pt(&["1", "1"]))]);
        assert!(matches!(bad, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn eval_examples() {
        let pz = fixtures::pz();
        assert_eq!(pz.eval(&q("0")).unwrap(), pt(&["0", "0"]));
        assert_eq!(pz.eval(&q("1/4")).unwrap(), pt(&["1/2", "0"]));
        for k in 0..=8 {
            assert_eq!(
                fixtures::pc().eval(&Rat::new(k.into(), 8.into())).unwrap(),
                pt(&["0", "0"])
            );
        }
        assert!(matches!(pz.eval(&q("-1")), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn reparam_examples() {
        let pz = fixtures::pz();
        assert_eq!(pz.reparam(&fixtures::id()), pz);
        assert_eq!(fixtures::idpath().reparam(&fixtures::a()), fixtures::p1());
        assert_eq!(
            pz.reparam(&fixtures::a()),
            path(
                2,
                &[
                    ("0", &["0", "0"]),
                    ("1/4", &["1", "0"]),
                    ("3/4", &["1", "0"]),
                    ("1", &["1", "1"])
                ]
            )
        );
    }

    #[test]
    fn stop_data_examples() {
        let s = fixtures::pz().stop_data();
        assert!(s.stops.is_empty() && !s.whole);
        let s = fixtures::p1().stop_data();
        assert_eq!(
            s.stops,
            vec![PathStop {
                interval: Interval::new(q("1/4"), q("3/4")).unwrap(),
                value: pt(&["1/2"])
            }]
        );
        assert!(fixtures::pc().stop_data().whole);
    }

    #[test]
    fn regularity_examples() {
        assert!(fixtures::pz().is_regular());
        assert!(!fixtures::p1().is_regular());
        assert!(fixtures::pc().is_regular());
    }

    #[test]
    fn concat_examples() {
        let p = path(1, &[("0", &["0"]), ("1", &["1"])]);
        let r = path(1, &[("0", &["1"]), ("1", &["3"])]);
        assert_eq!(
            p.concat(&r).unwrap(),
            path(1, &[("0", &["0"]), ("1/2", &["1"]), ("1", &["3"])])
        );
        assert_eq!(fixtures::pc().concat(&fixtures::pc()).unwrap(), fixtures::pc());
        assert_eq!(fixtures::pz().concat(&fixtures::pc()), Err(Error::EndpointMismatch));
        assert!(matches!(
            p.concat(&fixtures::pc()),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn directed_examples() {
        assert!(fixtures::pz().is_directed());
        let reversed = path(2, &[("0", &["1", "1"]), ("1/2", &["1", "0"]), ("1", &["0", "0"])]);
        assert!(!reversed.is_directed());
        assert!(fixtures::pc().is_directed());
    }

    proptest! {
        #[test]
        fn directedness_is_reparametrization_invariant(seed in any::<u64>(), dim in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_path(&mut rng, dim, 12, seed % 2 == 0);
            let f = random_reparam(&mut rng, 6);
            prop_assert_eq!(p.reparam(&f).is_directed(), p.is_directed());
        }

        #[test]
        fn reparam_is_pointwise(seed in any::<u64>(), dim in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_path(&mut rng, dim, 12, false);
            let f = random_reparam(&mut rng, 6);
            let g = random_reparam(&mut rng, 6);
            let pf = p.reparam(&f);
            for t in f.times().chain(pf.times()) {
                prop_assert_eq!(pf.at(t), p.at(&f.at(t)));
            }
            prop_assert_eq!(pf.reparam(&g), p.reparam(&f.compose(&g)));
        }
    }
}
