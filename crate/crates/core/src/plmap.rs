//! Piecewise-linear weakly increasing self-maps of the unit interval.
//!
//! A [`Reparam`] is stored as its list of breakpoints in canonical form: the
//! x-coordinates are strictly increasing, the y-coordinates weakly increasing,
//! the list starts at `(0,0)`, ends at `(1,1)`, and no interior breakpoint is
//! collinear with its neighbours. Two maps are therefore equal as functions
//! exactly when their breakpoint lists are equal, and `PartialEq` is semantic
//! equality.
//!
//! Every operation is exact. Results of composition, lattice operations and
//! convex combinations are computed on a finite grid of abscissae on which the
//! result is known to be linear between consecutive grid points, so no
//! sampling or rounding is involved.

use std::fmt;
use std::ops::Deref;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{in_unit, lerp, sorted_unique, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Breakpoint {
    pub x: Rat,
    pub y: Rat,
}

impl Breakpoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        Breakpoint { x, y }
    }
}

/// A continuous, weakly increasing, piecewise-linear surjection of `[0,1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Reparam {
    pts: Vec<Breakpoint>,
}

/// Drops every interior element that is collinear with its current
/// neighbours. A stack pass is enough: removing a point never makes an earlier
/// triple collinear unless it was already collinear through the removed point.
pub(crate) fn merge_collinear<T>(pts: Vec<T>, collinear: impl Fn(&T, &T, &T) -> bool) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(pts.len());
    for p in pts {
        while out.len() >= 2 && collinear(&out[out.len() - 2], &out[out.len() - 1], &p) {
            out.pop();
        }
        out.push(p);
    }
    out
}

fn collinear(a: &Breakpoint, b: &Breakpoint, c: &Breakpoint) -> bool {
    (&b.y - &a.y) * (&c.x - &b.x) == (&c.y - &b.y) * (&b.x - &a.x)
}

impl Reparam {
    pub fn identity() -> Self {
        Reparam {
            pts: vec![
                Breakpoint::new(Rat::zero(), Rat::zero()),
                Breakpoint::new(Rat::one(), Rat::one()),
            ],
        }
    }

    /// Validates `points` and returns the canonical map interpolating them.
    pub fn new(points: Vec<Breakpoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::BadEndpoints);
        }
        for p in &points {
            if !in_unit(&p.x) || !in_unit(&p.y) {
                return Err(Error::OutOfRange(format!("({}, {})", p.x, p.y)));
            }
        }
        for w in points.windows(2) {
            if w[1].x <= w[0].x {
                return Err(Error::NotMonotone(format!("x not strictly increasing at {}", w[1].x)));
            }
            if w[1].y < w[0].y {
                return Err(Error::NotMonotone(format!("y decreases at x = {}", w[1].x)));
            }
        }
        let first = &points[0];
        let last = &points[points.len() - 1];
        if !first.x.is_zero() || !first.y.is_zero() || !last.x.is_one() || !last.y.is_one() {
            return Err(Error::BadEndpoints);
        }
        Ok(Reparam {
            pts: merge_collinear(points, collinear),
        })
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rat, Rat)>,
    {
        Reparam::new(pairs.into_iter().map(|(x, y)| Breakpoint::new(x, y)).collect())
    }

    /// Builds a map from points already known to be valid; only merges
    /// collinear and duplicate points.
    pub(crate) fn from_trusted(mut points: Vec<Breakpoint>) -> Self {
        points.dedup_by(|b, a| {
            debug_assert!(a.x != b.x || a.y == b.y, "conflicting values at {}", a.x);
            a.x == b.x
        });
        debug_assert!(
            Reparam::new(points.clone()).is_ok(),
            "internal construction produced an invalid map: {:?}",
            points
        );
        Reparam {
            pts: merge_collinear(points, collinear),
        }
    }

    /// Samples `f` on a sorted grid that contains 0 and 1 and on which `f` is
    /// linear between neighbours.
    pub(crate) fn from_grid(grid: &[Rat], f: impl Fn(&Rat) -> Rat) -> Self {
        Reparam::from_trusted(grid.iter().map(|t| Breakpoint::new(t.clone(), f(t))).collect())
    }

    pub fn breakpoints(&self) -> &[Breakpoint] {
        &self.pts
    }

    pub fn times(&self) -> impl Iterator<Item = &Rat> + '_ {
        self.pts.iter().map(|p| &p.x)
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Breakpoint, &Breakpoint)> + '_ {
        self.pts.windows(2).map(|w| (&w[0], &w[1]))
    }

    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        if !in_unit(t) {
            return Err(Error::OutOfRange(t.to_string()));
        }
        Ok(self.at(t))
    }

    /// Value at `t`, which must lie in `[0,1]`.
    pub(crate) fn at(&self, t: &Rat) -> Rat {
        let idx = self.pts.partition_point(|p| p.x <= *t);
        if idx >= self.pts.len() {
            return self.pts[self.pts.len() - 1].y.clone();
        }
        let (a, b) = (&self.pts[idx - 1], &self.pts[idx]);
        if a.x == *t {
            return a.y.clone();
        }
        lerp(&a.y, &b.y, &((t - &a.x) / (&b.x - &a.x)))
    }

    /// The preimage of `y` as a closed interval `(min, max)`; degenerate unless
    /// `y` is a stop value.
    pub fn preimage(&self, y: &Rat) -> Result<(Rat, Rat)> {
        if !in_unit(y) {
            return Err(Error::OutOfRange(y.to_string()));
        }
        Ok(self.preimage_unchecked(y))
    }

    pub(crate) fn preimage_unchecked(&self, y: &Rat) -> (Rat, Rat) {
        let n = self.pts.len();
        let i = self.pts.partition_point(|p| p.y < *y);
        let lo = if i == 0 {
            Rat::zero()
        } else {
            let (a, b) = (&self.pts[i - 1], &self.pts[i]);
            &a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y)
        };
        let j = self.pts.partition_point(|p| p.y <= *y) - 1;
        let hi = if j == n - 1 {
            Rat::one()
        } else {
            let (a, b) = (&self.pts[j], &self.pts[j + 1]);
            &a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y)
        };
        (lo, hi)
    }

    /// The breakpoints of `self` together with every abscissa at which `self`
    /// crosses one of `levels` on a strictly increasing segment. Between
    /// neighbours of the result, `self` is linear and stays within a single
    /// gap of `levels`.
    pub fn pullback_grid(&self, levels: &[Rat]) -> Vec<Rat> {
        let mut grid: Vec<Rat> = self.times().cloned().collect();
        for (a, b) in self.segments() {
            if a.y == b.y {
                continue;
            }
            for y in levels {
                if a.y < *y && *y < b.y {
                    grid.push(&a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y));
                }
            }
        }
        sorted_unique(grid)
    }

    pub(crate) fn merged_times(&self, other: &Reparam) -> Vec<Rat> {
        sorted_unique(self.times().chain(other.times()).cloned().collect())
    }

    /// `self ∘ g`, i.e. `t ↦ self(g(t))`.
    pub fn compose(&self, g: &Reparam) -> Reparam {
        let levels: Vec<Rat> = self.times().cloned().collect();
        let grid = g.pullback_grid(&levels);
        Reparam::from_grid(&grid, |t| self.at(&g.at(t)))
    }

    pub fn is_homeo(&self) -> bool {
        self.segments().all(|(a, b)| a.y < b.y)
    }

    pub fn invert(&self) -> Result<Homeo> {
        Homeo::try_from(self.clone()).map(|h| h.inverse())
    }

    /// `max |self(t) - g(t)|` over `[0,1]`.
    pub fn sup_distance(&self, g: &Reparam) -> Rat {
        self.merged_times(g)
            .iter()
            .map(|t| (self.at(t) - g.at(t)).abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    fn crossing_grid(&self, g: &Reparam) -> Vec<Rat> {
        let base = self.merged_times(g);
        let mut grid = base.clone();
        for w in base.windows(2) {
            let da = self.at(&w[0]) - g.at(&w[0]);
            let db = self.at(&w[1]) - g.at(&w[1]);
            if (da.is_positive() && db.is_negative()) || (da.is_negative() && db.is_positive()) {
                grid.push(&w[0] + &da * (&w[1] - &w[0]) / (&da - &db));
            }
        }
        sorted_unique(grid)
    }

    pub fn pointwise_max(&self, g: &Reparam) -> Reparam {
        let grid = self.crossing_grid(g);
        Reparam::from_grid(&grid, |t| self.at(t).max(g.at(t)))
    }

    pub fn pointwise_min(&self, g: &Reparam) -> Reparam {
        let grid = self.crossing_grid(g);
        Reparam::from_grid(&grid, |t| self.at(t).min(g.at(t)))
    }

    /// `(1 - s) * self + s * g`.
    pub fn convex_combination(&self, g: &Reparam, s: &Rat) -> Result<Reparam> {
        if !in_unit(s) {
            return Err(Error::OutOfRange(s.to_string()));
        }
        let grid = self.merged_times(g);
        Ok(Reparam::from_grid(&grid, |t| lerp(&self.at(t), &g.at(t), s)))
    }
}

impl Default for Reparam {
    fn default() -> Self {
        Reparam::identity()
    }
}

impl fmt::Display for Reparam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.pts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", p.x, p.y)?;
        }
        write!(f, "]")
    }
}

/// A strictly increasing [`Reparam`]: a unit of the composition monoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Homeo(Reparam);

impl Homeo {
    pub fn identity() -> Self {
        Homeo(Reparam::identity())
    }

    /// The inverse map, obtained by swapping the coordinates of every
    /// breakpoint.
    pub fn inverse(&self) -> Homeo {
        let pts = self
            .0
            .pts
            .iter()
            .map(|p| Breakpoint::new(p.y.clone(), p.x.clone()))
            .collect();
        Homeo(Reparam::from_trusted(pts))
    }

    pub fn compose(&self, other: &Homeo) -> Homeo {
        Homeo(self.0.compose(&other.0))
    }

    pub fn as_reparam(&self) -> &Reparam {
        &self.0
    }

    pub fn into_reparam(self) -> Reparam {
        self.0
    }
}

impl TryFrom<Reparam> for Homeo {
    type Error = Error;

    fn try_from(f: Reparam) -> Result<Self> {
        if f.is_homeo() {
            Ok(Homeo(f))
        } else {
            Err(Error::NotInjective)
        }
    }
}

impl Deref for Homeo {
    type Target = Reparam;

    fn deref(&self) -> &Reparam {
        &self.0
    }
}

impl From<Homeo> for Reparam {
    fn from(h: Homeo) -> Reparam {
        h.0
    }
}
