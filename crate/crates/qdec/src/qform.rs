//! The Weyl-invariant quadratic form `q`, exact evaluation, and the minimal
//! multiplier `ell` making `ell q` integer-valued on a character lattice.
//!
//! In the simply-laced families the Gram matrix of `q` in simple-root
//! coordinates is the Cartan matrix, so `q(x) = (1/2) x^T C x` and every
//! simple coroot has `q = 1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::{denominator_lcm, Rat};
use crate::error::{Error, Result};
use crate::lattice::CharLattice;
use crate::rootsys::DatumRef;

#[derive(Debug, Clone)]
pub struct InvariantForm {
    datum: DatumRef,
    gram: Vec<Vec<Rat>>,
}

impl InvariantForm {
    pub fn new(datum: DatumRef) -> InvariantForm {
        let gram = datum
            .cartan()
            .iter()
            .map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect())
            .collect();
        InvariantForm { datum, gram }
    }

    pub fn datum(&self) -> &DatumRef {
        &self.datum
    }

    pub fn gram(&self) -> &[Vec<Rat>] {
        &self.gram
    }

    fn check_dim(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.datum.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.datum.rank(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `q(x) = (1/2) x^T B x`.
    pub fn q_eval(&self, x: &[Rat]) -> Result<Rat> {
        self.check_dim(x)?;
        Ok(self.b_eval(x, x)? / Rat::from_integer(2.into()))
    }

    /// Associated bilinear form `b(x, y) = x^T B y`, so that
    /// `b(x, y) = q(x + y) - q(x) - q(y)`.
    pub fn b_eval(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        let mut acc = Rat::from_integer(0.into());
        for (i, xi) in x.iter().enumerate() {
            if xi.numer().is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j].numer().is_zero() {
                    continue;
                }
                acc += xi * &self.gram[i][j] * yj;
            }
        }
        Ok(acc)
    }
}

/// The values whose denominators control integrality of multiples of `q`
/// on the lattice: `q(b_i)` and the pairings `b(b_i, b_j)`, `i < j`.
///
/// For `x = sum c_i b_i` one has
/// `q(x) = sum c_i^2 q(b_i) + sum_{i<j} c_i c_j b(b_i, b_j)`,
/// so `ell q` is integral on the lattice iff it clears exactly these values.
fn basis_form_values(form: &InvariantForm, lat: &CharLattice) -> Result<Vec<Rat>> {
    if !form.datum().same_datum(lat.datum()) {
        return Err(Error::DatumMismatch(
            "form and lattice built over different root data".into(),
        ));
    }
    let basis = lat.basis();
    let mut values = Vec::new();
    for (i, bi) in basis.iter().enumerate() {
        values.push(form.q_eval(bi)?);
        for bj in basis.iter().skip(i + 1) {
            values.push(form.b_eval(bi, bj)?);
        }
    }
    Ok(values)
}

/// Smallest positive integer `ell` such that `ell q` takes integer values
/// on the lattice: the generator of `Q(G) = ell q Z`.
pub fn ell_of_lattice(form: &InvariantForm, lat: &CharLattice) -> Result<u64> {
    let values = basis_form_values(form, lat)?;
    let ell = denominator_lcm(values.iter());
    u64::try_from(ell.abs()).map_err(|_| Error::Inconsistency("ell overflow".into()))
}

/// Constructive minimality witness: for each prime `p | ell`, some basis
/// value stays non-integral after multiplying by `ell / p`.
pub fn ell_minimality_witness(form: &InvariantForm, lat: &CharLattice) -> Result<bool> {
    let values = basis_form_values(form, lat)?;
    let ell = BigInt::from(ell_of_lattice(form, lat)?);
    for (p, _) in crate::arith::prime_factors(u64::try_from(&ell).unwrap()) {
        let reduced = &ell / BigInt::from(p);
        let witnessed = values.iter().any(|v| {
            let scaled = v * Rat::from_integer(reduced.clone());
            !scaled.is_integer()
        });
        if !witnessed {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Case-split value of `ell` for `SL_n/mu_m` (label QSL in traces):
/// `2m^2/gcd(2m^2, n)` for even `n`, `m^2/gcd(m^2, n)` for odd `n`.
pub fn ell_closed_form_sl(n: u64, m: u64) -> Result<u64> {
    if n < 2 || m < 1 || !n.is_multiple_of(m) {
        return Err(Error::invalid("m must divide n"));
    }
    let n = n as u128;
    let m = m as u128;
    let value = if n.is_multiple_of(2) {
        2 * m * m / (2 * m * m).gcd(&n)
    } else {
        m * m / (m * m).gcd(&n)
    };
    u64::try_from(value).map_err(|_| Error::invalid("parameters too large"))
}

/// Case-split value of `ell` for `HSpin_{4n}` (label QHSp in traces):
/// 1, 2 or 4 depending on `n mod 4`.
pub fn ell_closed_form_halfspin(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("half-spin groups need n >= 2"));
    }
    Ok(match n % 4 {
        0 => 1,
        2 => 2,
        _ => 4,
    })
}
