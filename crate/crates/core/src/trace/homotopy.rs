//! Thin directed homotopies between equivalent paths.
//!
//! Both paths factor through a regular `r` as `r ∘ phi` and `r ∘ psi`. With
//! `eta = max(phi, psi)`, the maps `H1(s,t) = r((1-s)·phi(t) + s·eta(t))` and
//! `H2` (same with `psi`) deform each path into `r ∘ eta`, and are increasing
//! in `s` because `eta` dominates both.

use super::regular::shared_source;
use super::{Path, Point};
use crate::error::{Error, Result};
use crate::plmap::Reparam;
use crate::rat::{in_unit, lerp, Rat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomotopyWitness {
    r: Path,
    phi: Reparam,
    psi: Reparam,
    eta: Reparam,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

impl HomotopyWitness {
    /// Checks that `r` is regular and `eta = max(phi, psi)`.
    pub fn new(r: Path, phi: Reparam, psi: Reparam, eta: Reparam) -> Result<Self> {
        if !r.is_regular() {
            return Err(Error::NotRegular);
        }
        if eta != phi.pointwise_max(&psi) {
            return Err(Error::WitnessMismatch);
        }
        Ok(HomotopyWitness { r, phi, psi, eta })
    }

    pub fn r(&self) -> &Path {
        &self.r
    }

    pub fn phi(&self) -> &Reparam {
        &self.phi
    }

    pub fn psi(&self) -> &Reparam {
        &self.psi
    }

    pub fn eta(&self) -> &Reparam {
        &self.eta
    }

    /// `Φ(s,t)` for side one, `Ψ(s,t)` for side two.
    pub fn interpolation(&self, side: Side, s: &Rat, t: &Rat) -> Result<Rat> {
        for x in [s, t] {
            if !in_unit(x) {
                return Err(Error::OutOfRange(x.to_string()));
            }
        }
        let start = match side {
            Side::First => &self.phi,
            Side::Second => &self.psi,
        };
        Ok(lerp(&start.at(t), &self.eta.at(t), s))
    }

    /// The endpoint path on the given side, `r ∘ phi` or `r ∘ psi`.
    pub fn endpoint_path(&self, side: Side) -> Path {
        match side {
            Side::First => self.r.reparam(&self.phi),
            Side::Second => self.r.reparam(&self.psi),
        }
    }
}

pub fn thin_homotopy(p: &Path, q: &Path) -> Result<HomotopyWitness> {
    let s = shared_source(p, q)?;
    let eta = s.phi.pointwise_max(&s.psi);
    Ok(HomotopyWitness {
        r: s.r,
        phi: s.phi,
        psi: s.psi,
        eta,
    })
}

pub fn witness_eval(w: &HomotopyWitness, side: Side, s: &Rat, t: &Rat) -> Result<Point> {
    let x = w.interpolation(side, s, t)?;
    Ok(w.r.at(&x))
}

pub fn witness_endpoints(w: &HomotopyWitness) -> (Reparam, Reparam) {
    (w.phi.clone(), w.psi.clone())
}
