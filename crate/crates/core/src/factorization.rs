//! Solving `eta = phi ∘ psi` (right lifts) and `eta = psi ∘ phi` (left
//! factors) for `psi`.
//!
//! Both existence tests are decided exactly from stop data: a right lift
//! exists iff every stop value of `phi` is a stop value of `eta`, and a left
//! factor exists iff every stop interval of `phi` sits inside a stop interval
//! of `eta`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::plmap::{Breakpoint, Reparam};
use crate::rat::{lerp, Rat};
use crate::stopmap::{realize_values, Piece};

/// Returns `psi` with `phi ∘ psi = eta`.
///
/// On a move interval `K` of `eta`, `psi` is forced to be the inverse of
/// `phi` (restricted over `eta(K)`) composed with `eta`. On a stop interval of
/// `eta` whose value is not a stop value of `phi`, `psi` is constant at the
/// unique preimage. On a stop interval `L` whose value `v` is a stop value of
/// `phi`, `psi` can be any increasing map onto the plateau `phi⁻¹(v)`; the
/// linear one is used, unless `extra_stops` asks for plateaus there.
///
/// Without `extra_stops` the stop values of the lift are exactly
/// `phi⁻¹(C_eta \ C_phi)`. With `extra_stops = Some(c)`, `c` must contain that
/// set and otherwise only points of the stop set of `phi`; the lift then has
/// stop values exactly `c`.
pub fn right_lift(eta: &Reparam, phi: &Reparam, extra_stops: Option<&BTreeSet<Rat>>) -> Result<Reparam> {
    let eta_stops = eta.stop_data();
    let phi_stops = phi.stop_data();
    let c_eta = eta_stops.values();
    let c_phi = phi_stops.values();
    if !c_phi.is_subset(&c_eta) {
        return Err(Error::NoRightLift);
    }

    let minimal: BTreeSet<Rat> = c_eta.difference(&c_phi).map(|v| phi.preimage_unchecked(v).0).collect();
    let mut extras: BTreeSet<Rat> = BTreeSet::new();
    if let Some(wanted) = extra_stops {
        if let Some(missing) = minimal.difference(wanted).next() {
            return Err(Error::BadExtraStops(format!(
                "required stop value {missing} is missing"
            )));
        }
        for v in wanted.difference(&minimal) {
            if !phi_stops.in_stop_set(v) {
                return Err(Error::BadExtraStops(format!(
                    "{v} is neither a forced stop value nor in the stop set of phi"
                )));
            }
            extras.insert(v.clone());
        }
    }

    let levels: Vec<Rat> = phi.breakpoints().iter().map(|p| p.y.clone()).collect();
    let grid = eta.pullback_grid(&levels);
    let mut pts: Vec<Breakpoint> = Vec::new();
    for piece in eta_stops.pieces() {
        match piece {
            Piece::Move(k) => {
                for t in grid.iter().filter(|t| k.contains(t)) {
                    let (lo, hi) = phi.preimage_unchecked(&eta.at(t));
                    // interior values have a single preimage; at the ends pick
                    // the side of a plateau that faces the move interval
                    let x = if t == k.lo() { hi } else { lo };
                    pts.push(Breakpoint::new(t.clone(), x));
                }
            }
            Piece::Stop(s) if !c_phi.contains(&s.value) => {
                let (x, _) = phi.preimage_unchecked(&s.value);
                pts.push(Breakpoint::new(s.interval.lo().clone(), x.clone()));
                pts.push(Breakpoint::new(s.interval.hi().clone(), x));
            }
            Piece::Stop(s) => {
                let plateau = &phi_stops
                    .stop_with_value(&s.value)
                    .expect("value is a stop value of phi")
                    .interval;
                let (p0, p1) = (plateau.lo(), plateau.hi());
                let (l0, l1) = (s.interval.lo(), s.interval.hi());
                let local: BTreeSet<Rat> = extras
                    .iter()
                    .filter(|v| plateau.contains(v))
                    .map(|v| (v - p0) / (p1 - p0))
                    .collect();
                let layout = realize_values(&local).expect("normalized values lie in [0,1]");
                for b in layout.breakpoints() {
                    pts.push(Breakpoint::new(lerp(l0, l1, &b.x), lerp(p0, p1, &b.y)));
                }
            }
        }
    }
    Ok(Reparam::from_trusted(pts))
}

/// Returns the unique `psi` with `psi ∘ phi = eta`, namely
/// `psi(x) = eta(phi⁻¹(x))`.
pub fn left_factor(eta: &Reparam, phi: &Reparam) -> Result<Reparam> {
    for s in phi.stop_data().stops() {
        if eta.at(s.interval.lo()) != eta.at(s.interval.hi()) {
            return Err(Error::NoLeftFactor);
        }
    }
    let pts = eta
        .merged_times(phi)
        .iter()
        .map(|t| Breakpoint::new(phi.at(t), eta.at(t)))
        .collect();
    Ok(Reparam::from_trusted(pts))
}
