//! Stop intervals, stop values and stop maps of reparametrizations.
//!
//! For a PL reparametrization the stop intervals are exactly its maximal
//! zero-slope segments, there are finitely many of them, and the stop map
//! pairs each interval with the constant value taken on it. The move
//! intervals are the closures of the gaps between stop intervals.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::plmap::{Breakpoint, Reparam};
use crate::rat::{in_unit, int, rat, Rat};

/// A nondegenerate closed subinterval `[lo, hi]` of the unit interval.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self> {
        if !in_unit(&lo) || !in_unit(&hi) {
            return Err(Error::OutOfRange(format!("[{lo}, {hi}]")));
        }
        if lo >= hi {
            return Err(Error::InvalidStopData(format!("degenerate interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.lo <= *t && *t <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / int(2)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Stop {
    pub interval: Interval,
    pub value: Rat,
}

impl Stop {
    pub fn new(interval: Interval, value: Rat) -> Self {
        Stop { interval, value }
    }
}

/// A piece of the decomposition of `[0,1]` into stop and move intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Piece<'a> {
    Stop(&'a Stop),
    Move(Interval),
}

/// The stop intervals of a reparametrization paired with their values.
///
/// Invariants: intervals are disjoint and increasing, values strictly
/// increase along the list, an interval containing 0 has value 0, one
/// containing 1 has value 1, and conversely an interval away from 0 (resp. 1)
/// has a value above 0 (resp. below 1). These are exactly the conditions under
/// which some reparametrization has this stop map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StopData {
    stops: Vec<Stop>,
}

impl StopData {
    pub fn empty() -> Self {
        StopData::default()
    }

    pub fn new(stops: Vec<Stop>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidStopData(msg));
        for s in &stops {
            if !in_unit(&s.value) {
                return bad(format!("value {} outside [0,1]", s.value));
            }
            if s.interval.lo.is_zero() != s.value.is_zero() {
                return bad(format!(
                    "interval {} and value {}: an interval contains 0 iff its value is 0",
                    s.interval, s.value
                ));
            }
            if s.interval.hi.is_one() != s.value.is_one() {
                return bad(format!(
                    "interval {} and value {}: an interval contains 1 iff its value is 1",
                    s.interval, s.value
                ));
            }
        }
        for w in stops.windows(2) {
            if w[0].interval.hi >= w[1].interval.lo {
                return bad(format!(
                    "intervals {} and {} are not disjoint and increasing",
                    w[0].interval, w[1].interval
                ));
            }
            if w[0].value >= w[1].value {
                return bad(format!(
                    "values {} and {} are not strictly increasing",
                    w[0].value, w[1].value
                ));
            }
        }
        Ok(StopData { stops })
    }

    pub fn stops(&self) -> &[Stop] {
        &self.stops
    }

    pub fn is_empty(&self) -> bool {
        self.stops.is_empty()
    }

    pub fn len(&self) -> usize {
        self.stops.len()
    }

    pub fn values(&self) -> BTreeSet<Rat> {
        self.stops.iter().map(|s| s.value.clone()).collect()
    }

    pub fn intervals(&self) -> impl Iterator<Item = &Interval> + '_ {
        self.stops.iter().map(|s| &s.interval)
    }

    /// Whether `t` lies in the stop set `D`.
    pub fn in_stop_set(&self, t: &Rat) -> bool {
        self.stop_containing(t).is_some()
    }

    pub fn stop_containing(&self, t: &Rat) -> Option<&Stop> {
        self.stops.iter().find(|s| s.interval.contains(t))
    }

    /// The stop whose value is `v`, i.e. the inverse stop map.
    pub fn stop_with_value(&self, v: &Rat) -> Option<&Stop> {
        self.stops.iter().find(|s| s.value == *v)
    }

    /// Closures of the components of the complement of the stop set.
    pub fn move_intervals(&self) -> Vec<Interval> {
        self.pieces()
            .into_iter()
            .filter_map(|p| match p {
                Piece::Move(k) => Some(k),
                Piece::Stop(_) => None,
            })
            .collect()
    }

    /// Stop and move intervals of `[0,1]`, in order.
    pub fn pieces(&self) -> Vec<Piece<'_>> {
        let mut out = Vec::with_capacity(2 * self.stops.len() + 1);
        let mut cursor = Rat::zero();
        for s in &self.stops {
            if cursor < s.interval.lo {
                out.push(Piece::Move(Interval {
                    lo: cursor,
                    hi: s.interval.lo.clone(),
                }));
            }
            out.push(Piece::Stop(s));
            cursor = s.interval.hi.clone();
        }
        if cursor < Rat::one() {
            out.push(Piece::Move(Interval {
                lo: cursor,
                hi: Rat::one(),
            }));
        }
        out
    }

    /// The reparametrization with exactly this stop map that is linear on
    /// every move interval.
    pub fn realize(&self) -> Reparam {
        let mut pts = vec![Breakpoint::new(Rat::zero(), Rat::zero())];
        for s in &self.stops {
            pts.push(Breakpoint::new(s.interval.lo.clone(), s.value.clone()));
            pts.push(Breakpoint::new(s.interval.hi.clone(), s.value.clone()));
        }
        pts.push(Breakpoint::new(Rat::one(), Rat::one()));
        Reparam::from_trusted(pts)
    }
}

impl fmt::Display for StopData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.stops.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({},{})", s.interval, s.value)?;
        }
        write!(f, "]")
    }
}

impl Reparam {
    /// One entry per maximal plateau. Canonical form merges adjacent flat
    /// segments, so plateaus are single segments.
    pub fn stop_data(&self) -> StopData {
        let stops = self
            .segments()
            .filter(|(a, b)| a.y == b.y)
            .map(|(a, b)| Stop {
                interval: Interval {
                    lo: a.x.clone(),
                    hi: b.x.clone(),
                },
                value: a.y.clone(),
            })
            .collect();
        StopData { stops }
    }

    pub fn stop_values(&self) -> BTreeSet<Rat> {
        self.segments()
            .filter(|(a, b)| a.y == b.y)
            .map(|(a, _)| a.y.clone())
            .collect()
    }

    pub fn move_intervals(&self) -> Vec<Interval> {
        self.stop_data().move_intervals()
    }

    /// The preimage of a stop interval `[a, b]` of another map, as the
    /// interval `[min f⁻¹(a), max f⁻¹(b)]`.
    pub(crate) fn preimage_interval(&self, j: &Interval) -> Interval {
        let (lo, _) = self.preimage_unchecked(&j.lo);
        let (_, hi) = self.preimage_unchecked(&j.hi);
        Interval { lo, hi }
    }
}

/// Stop data of `f ∘ g` computed from the stop data of the factors alone.
///
/// Stop intervals of `g` whose value avoids the stop set of `f` survive with
/// value `f(value)`; every stop interval of `f` pulls back along `g` to a stop
/// interval of the composite with the same value.
pub fn compose_stop_data(f: &Reparam, g: &Reparam) -> StopData {
    let sf = f.stop_data();
    let sg = g.stop_data();
    let mut stops: Vec<Stop> = sg
        .stops
        .iter()
        .filter(|s| !sf.in_stop_set(&s.value))
        .map(|s| Stop {
            interval: s.interval.clone(),
            value: f.at(&s.value),
        })
        .collect();
    stops.extend(sf.stops.iter().map(|s| Stop {
        interval: g.preimage_interval(&s.interval),
        value: s.value.clone(),
    }));
    stops.sort_by(|a, b| a.interval.lo.cmp(&b.interval.lo));
    StopData::new(stops).expect("stop data of a composite is valid")
}

/// The canonical reparametrization with stop-value set `values`: for `k`
/// values sorted ascending, the `i`-th plateau occupies
/// `[(2i-1)/(2k+1), 2i/(2k+1)]`.
pub fn realize_values(values: &BTreeSet<Rat>) -> Result<Reparam> {
    if let Some(v) = values.iter().find(|v| !in_unit(v)) {
        return Err(Error::OutOfRange(v.to_string()));
    }
    let k = values.len() as i64;
    let width = rat(1, 2 * k + 1);
    let mut pts = vec![Breakpoint::new(Rat::zero(), Rat::zero())];
    for (i, v) in values.iter().enumerate() {
        let i = i as i64 + 1;
        pts.push(Breakpoint::new(int(2 * i - 1) * &width, v.clone()));
        pts.push(Breakpoint::new(int(2 * i) * &width, v.clone()));
    }
    pts.push(Breakpoint::new(Rat::one(), Rat::one()));
    Ok(Reparam::from_trusted(pts))
}

/// The `depth`-th map of the plateau-insertion sequence that realizes the
/// stop values `values` one at a time.
///
/// Starting from the identity, step `n` (0-based) finds the move interval
/// `[a, b]` whose image contains the next value `c`, takes its preimage
/// `x*`, and flattens `[x* - h, x* + h]` to `c` with
/// `h = min(x* - a, b - x*, 2^-n / slope) / 4`, reconnecting linearly to the
/// interval ends. Values 0 and 1 are hosted at the boundary, where the
/// plateau is one-sided: `[0, h]` resp. `[1 - h, 1]` with
/// `h = min(b - a, 2^-n / slope) / 4`. Each step moves the map by exactly
/// `slope * h <= 2^-(n+2)` in sup distance.
///
/// Every map in the sequence is linear on each of its move intervals.
pub fn countable_builder(values: &[Rat], depth: usize) -> Result<Reparam> {
    if depth > values.len() {
        return Err(Error::DepthTooLarge {
            depth,
            len: values.len(),
        });
    }
    let mut seen = BTreeSet::new();
    for v in values {
        if !in_unit(v) {
            return Err(Error::OutOfRange(v.to_string()));
        }
        if !seen.insert(v) {
            return Err(Error::DuplicateValue(v.to_string()));
        }
    }
    let mut phi = Reparam::identity();
    for (n, c) in values[..depth].iter().enumerate() {
        phi = insert_plateau(&phi, c, n);
    }
    Ok(phi)
}

fn insert_plateau(phi: &Reparam, c: &Rat, n: usize) -> Reparam {
    let host = phi
        .move_intervals()
        .into_iter()
        .find(|k| {
            let (ya, yb) = (phi.at(&k.lo), phi.at(&k.hi));
            (ya < *c && *c < yb) || (k.lo.is_zero() && c.is_zero()) || (k.hi.is_one() && c.is_one())
        })
        .expect("a value that is not yet a stop value lies over some move interval");
    let (a, b) = (&host.lo, &host.hi);
    let (ya, yb) = (phi.at(a), phi.at(b));
    let slope = (&yb - &ya) / (b - a);
    let bound = Rat::new(BigInt::one(), BigInt::one() << n) / &slope;
    let quarter = rat(1, 4);

    let (lo, hi) = if c.is_zero() {
        let h = (b - a).min(bound) * &quarter;
        (a.clone(), a + h)
    } else if c.is_one() {
        let h = (b - a).min(bound) * &quarter;
        (b - h, b.clone())
    } else {
        let x = a + (c - &ya) / &slope;
        let h = (&x - a).min(b - &x).min(bound) * &quarter;
        (&x - &h, &x + &h)
    };

    let mut pts: Vec<Breakpoint> = phi.breakpoints().to_vec();
    let at = pts.partition_point(|p| p.x <= *a);
    pts.insert(at, Breakpoint::new(hi, c.clone()));
    pts.insert(at, Breakpoint::new(lo, c.clone()));
    Reparam::from_trusted(pts)
}

/// A strictly increasing PL approximation within sup distance `1/n`:
/// the map through `(c_k, k/n)` where `c_k` is the least preimage of `k/n`.
pub fn approx_homeo(f: &Reparam, n: u32) -> Result<crate::plmap::Homeo> {
    if n == 0 {
        return Err(Error::OutOfRange("resolution must be at least 1".into()));
    }
    let n = n as i64;
    let mut pts = vec![Breakpoint::new(Rat::zero(), Rat::zero())];
    for k in 1..n {
        let level = rat(k, n);
        let (c, _) = f.preimage_unchecked(&level);
        pts.push(Breakpoint::new(c, level));
    }
    pts.push(Breakpoint::new(Rat::one(), Rat::one()));
    crate::plmap::Homeo::try_from(Reparam::from_trusted(pts))
}

/// A non-injective PL approximation within sup distance `1/n`: agrees with
/// `f` from `c_1 = min f⁻¹(1/n)` on, is 0 on `[0, c_1/2]`, and linear in
/// between.
pub fn approx_noninjective(f: &Reparam, n: u32) -> Result<Reparam> {
    if n == 0 {
        return Err(Error::OutOfRange("resolution must be at least 1".into()));
    }
    let level = rat(1, n as i64);
    let (c1, _) = f.preimage_unchecked(&level);
    let mut pts = vec![
        Breakpoint::new(Rat::zero(), Rat::zero()),
        Breakpoint::new(&c1 / int(2), Rat::zero()),
        Breakpoint::new(c1.clone(), level),
    ];
    pts.extend(f.breakpoints().iter().filter(|p| p.x > c1).cloned());
    Ok(Reparam::from_trusted(pts))
}
