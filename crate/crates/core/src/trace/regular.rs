//! Regularization, trace normal forms and deciding reparametrization
//! equivalence.
//!
//! Every path factors as `q ∘ phi` with `q` regular (no stop intervals, or
//! constant). Two regular paths have the same trace iff they differ by a
//! homeomorphism, and for PL paths that is decided by comparing the vertex
//! chains left after merging consecutive edges that point the same way.

use std::fmt;

use num_traits::{One, Zero};

use super::{Path, PathPoint, Point};
use crate::error::{Error, Result};
use crate::factorization::left_factor;
use crate::plmap::{Breakpoint, Homeo, Reparam};
use crate::rat::{lerp, sorted_unique, Rat};
use crate::stopmap::{Stop, StopData};

/// Canonical vertex chain of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TraceNF {
    pub vertices: Vec<Point>,
}

impl TraceNF {
    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }
}

impl fmt::Display for TraceNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .vertices
            .iter()
            .map(|v| {
                let xs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", xs.join(","))
            })
            .collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `p = q ∘ phi` with `q` regular, where `phi` realizes the stop intervals of
/// `p` and sends each to its midpoint (or to 0 or 1 when it touches that end).
pub fn regularize(p: &Path) -> (Path, Reparam) {
    if p.is_regular() {
        return (p.clone(), Reparam::identity());
    }
    let stops = p
        .stop_data()
        .stops
        .into_iter()
        .map(|s| {
            let v = if s.interval.lo().is_zero() {
                Rat::zero()
            } else if s.interval.hi().is_one() {
                Rat::one()
            } else {
                s.interval.midpoint()
            };
            Stop::new(s.interval, v)
        })
        .collect();
    let phi = StopData::new(stops)
        .expect("stop intervals of a path form valid stop data")
        .realize();
    let grid = sorted_unique(p.times().chain(phi.times()).cloned().collect());
    let mut pts: Vec<PathPoint> = Vec::with_capacity(grid.len());
    for t in grid {
        let s = phi.at(&t);
        if pts.last().is_some_and(|last| last.t == s) {
            continue;
        }
        pts.push(PathPoint::new(s, p.at(&t)));
    }
    (Path::from_trusted(p.dim(), pts), phi)
}

fn same_direction(a: &Point, b: &Point, c: &Point) -> bool {
    let u: Vec<Rat> = a.iter().zip(b).map(|(x, y)| y - x).collect();
    let w: Vec<Rat> = b.iter().zip(c).map(|(x, y)| y - x).collect();
    let Some(k) = w.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    let lambda = &u[k] / &w[k];
    lambda > Rat::zero() && u.iter().zip(&w).all(|(x, y)| *x == &lambda * y)
}

/// Indices into the breakpoints of a regular non-constant path that survive
/// the normal-form reduction.
pub(crate) fn nf_indices(q: &Path) -> Vec<usize> {
    let pts = q.breakpoints();
    let mut keep: Vec<usize> = Vec::with_capacity(pts.len());
    for i in 0..pts.len() {
        while keep.len() >= 2 {
            let (a, b) = (keep[keep.len() - 2], keep[keep.len() - 1]);
            if same_direction(&pts[a].point, &pts[b].point, &pts[i].point) {
                keep.pop();
            } else {
                break;
            }
        }
        keep.push(i);
    }
    keep
}

fn nf_of_regular(q: &Path) -> TraceNF {
    if q.is_constant() {
        return TraceNF {
            vertices: vec![q.start().clone()],
        };
    }
    let pts = q.breakpoints();
    TraceNF {
        vertices: nf_indices(q).into_iter().map(|i| pts[i].point.clone()).collect(),
    }
}

pub fn normal_form(p: &Path) -> TraceNF {
    nf_of_regular(&regularize(p).0)
}

/// Reparametrization equivalence.
pub fn equivalent(p: &Path, q: &Path) -> Result<bool> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: q.dim(),
        });
    }
    Ok(normal_form(p) == normal_form(q))
}

/// Common source of two equivalent paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharedSource {
    pub r: Path,
    pub phi: Reparam,
    pub psi: Reparam,
}

/// Progress of `x` along the edge `from -> to`, as a fraction of its length.
fn progress(from: &Point, to: &Point, x: &Point) -> Rat {
    let k = from
        .iter()
        .zip(to)
        .position(|(a, b)| a != b)
        .expect("normal-form edges are nondegenerate");
    (&x[k] - &from[k]) / (&to[k] - &from[k])
}

/// Time at which the strictly increasing samples `(t, lambda)` reach `lambda`.
fn time_at(samples: &[(Rat, Rat)], lambda: &Rat) -> Rat {
    let idx = samples.partition_point(|(_, l)| l < lambda);
    let (t1, l1) = &samples[idx];
    if l1 == lambda || idx == 0 {
        return t1.clone();
    }
    let (t0, l0) = &samples[idx - 1];
    lerp(t0, t1, &((lambda - l0) / (l1 - l0)))
}

/// The homeomorphism `h` with `r2 = r1 ∘ h`, for regular non-constant paths
/// with equal normal forms.
fn matching_homeo(r1: &Path, r2: &Path) -> Homeo {
    let (i1, i2) = (nf_indices(r1), nf_indices(r2));
    debug_assert_eq!(i1.len(), i2.len());
    let (p1, p2) = (r1.breakpoints(), r2.breakpoints());
    let mut pts: Vec<Breakpoint> = Vec::new();
    for e in 0..i1.len() - 1 {
        let (from, to) = (&p1[i1[e]].point, &p1[i1[e + 1]].point);
        let samples = |pts: &[PathPoint]| -> Vec<(Rat, Rat)> {
            pts.iter()
                .map(|p| (p.t.clone(), progress(from, to, &p.point)))
                .collect()
        };
        let s1 = samples(&p1[i1[e]..=i1[e + 1]]);
        let s2 = samples(&p2[i2[e]..=i2[e + 1]]);
        let lambdas = sorted_unique(s1.iter().chain(&s2).map(|(_, l)| l.clone()).collect());
        for l in lambdas {
            pts.push(Breakpoint::new(time_at(&s2, &l), time_at(&s1, &l)));
        }
    }
    Homeo::try_from(Reparam::from_trusted(pts)).expect("matching map is strictly increasing")
}

/// `(r, phi, psi)` with `r` regular, `p = r ∘ phi` and `q = r ∘ psi`.
pub fn shared_source(p: &Path, q: &Path) -> Result<SharedSource> {
    if !equivalent(p, q)? {
        return Err(Error::NotEquivalent);
    }
    let (r1, f1) = regularize(p);
    let (r2, f2) = regularize(q);
    let psi = if r1.is_constant() {
        f2
    } else {
        matching_homeo(&r1, &r2).as_reparam().compose(&f2)
    };
    Ok(SharedSource { r: r1, phi: f1, psi })
}

/// Given regular `p` with `p ∘ phi = p2 ∘ phi2`, returns `eta` with
/// `p ∘ eta = p2`.
pub fn factor_regular(p: &Path, phi: &Reparam, p2: &Path, phi2: &Reparam) -> Result<Reparam> {
    if p.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            expected: p.dim(),
            found: p2.dim(),
        });
    }
    if !p.is_regular() {
        return Err(Error::NotRegular);
    }
    if p.reparam(phi) != p2.reparam(phi2) {
        return Err(Error::WitnessMismatch);
    }
    match left_factor(phi, phi2) {
        Ok(eta) => Ok(eta),
        Err(_) if p.is_constant() => Ok(Reparam::identity()),
        Err(e) => Err(e),
    }
}
