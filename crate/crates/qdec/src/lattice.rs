//! Character lattices sandwiched between the root and weight lattices,
//! the specific lattices for `SL_n/mu_m` and `HSpin_{4n}`, and exact
//! membership/index computations.
//!
//! A lattice is stored as `(1/d) L` where `L` is the Hermite normal form of
//! the integer lattice `d * Lambda` and `d` is minimal. That representation
//! is canonical: two generating sets of the same lattice yield identical
//! stored bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{denominator_lcm, Rat};
use crate::error::{Error, Result};
use crate::intlin;
use crate::rootsys::{self, DatumRef, Family};

#[derive(Debug, Clone)]
pub struct CharLattice {
    datum: DatumRef,
    /// Minimal positive integer with `denom * Lambda` integral.
    denom: BigInt,
    /// Canonical HNF basis of `denom * Lambda`; square and full rank.
    int_basis: Vec<Vec<BigInt>>,
    /// `int_basis / denom`, the basis of `Lambda` itself.
    basis: Vec<Vec<Rat>>,
    /// Distinguished coset representative, when the lattice was built from one.
    tau: Option<Vec<Rat>>,
}

impl CharLattice {
    /// Z-span of the given rational generators. The result must contain all
    /// simple coroots and pair integrally with them (i.e. lie between the
    /// root and weight lattices), otherwise the construction is rejected.
    pub fn from_generators(
        datum: DatumRef,
        generators: &[Vec<Rat>],
        tau: Option<Vec<Rat>>,
    ) -> Result<CharLattice> {
        let rank = datum.rank();
        for g in generators {
            if g.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, got: g.len() });
            }
        }
        let d0 = denominator_lcm(generators.iter().flat_map(|g| g.iter()));
        let int_rows: Vec<Vec<BigInt>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|x| {
                        let scaled = x * Rat::from_integer(d0.clone());
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer()
                    })
                    .collect()
            })
            .collect();
        let hnf = intlin::hnf_rows(int_rows);
        if hnf.len() != rank {
            return Err(Error::invalid(
                "generators do not span a full-rank lattice",
            ));
        }
        // reduce to the minimal denominator
        let mut content = d0.clone();
        for row in &hnf {
            for e in row {
                content = content.gcd(e);
            }
        }
        let denom = &d0 / &content;
        let int_basis: Vec<Vec<BigInt>> = hnf
            .iter()
            .map(|row| row.iter().map(|e| e / &content).collect())
            .collect();
        let basis: Vec<Vec<Rat>> = int_basis
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Rat::new(e.clone(), denom.clone()))
                    .collect()
            })
            .collect();
        let lat = CharLattice { datum, denom, int_basis, basis, tau };
        lat.check_sandwich()?;
        Ok(lat)
    }

    /// The root lattice of the datum.
    pub fn root_lattice(datum: DatumRef) -> CharLattice {
        let rank = datum.rank();
        let gens: Vec<Vec<Rat>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                    .collect()
            })
            .collect();
        CharLattice::from_generators(datum, &gens, None).expect("root lattice is valid")
    }

    /// The weight lattice of the datum (spanned by the fundamental weights).
    pub fn weight_lattice(datum: DatumRef) -> CharLattice {
        let rank = datum.rank();
        let gens: Vec<Vec<Rat>> = (1..=rank)
            .map(|i| datum.fundamental_weight(i).expect("valid index"))
            .collect();
        CharLattice::from_generators(datum, &gens, None).expect("weight lattice is valid")
    }

    /// `Lambda_r <= Lambda <= Lambda_w` check used at construction time.
    fn check_sandwich(&self) -> Result<()> {
        let rank = self.datum.rank();
        // every basis vector pairs integrally with every simple coroot
        for b in &self.basis {
            for i in 0..rank {
                let pairing: Rat = (0..rank)
                    .map(|j| &b[j] * Rat::from_integer(self.datum.cartan()[i][j].into()))
                    .sum();
                if !pairing.is_integer() {
                    return Err(Error::invalid(
                        "lattice is not contained in the weight lattice",
                    ));
                }
            }
        }
        for i in 1..=rank {
            let coroot = self.datum.simple_coroot(i)?;
            if !self.contains(&coroot)? {
                return Err(Error::invalid("lattice does not contain the root lattice"));
            }
        }
        Ok(())
    }

    pub fn datum(&self) -> &DatumRef {
        &self.datum
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn tau(&self) -> Option<&[Rat]> {
        self.tau.as_deref()
    }

    /// Exact membership: is `x` an integer combination of basis vectors?
    #[allow(clippy::needless_range_loop)]
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        let rank = self.datum.rank();
        if x.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: x.len() });
        }
        // x in (1/d) L  <=>  d x integral and d x in L
        let mut y: Vec<BigInt> = Vec::with_capacity(rank);
        for xi in x {
            let scaled = xi * Rat::from_integer(self.denom.clone());
            if !scaled.is_integer() {
                return Ok(false);
            }
            y.push(scaled.to_integer());
        }
        // forward substitution through the triangular HNF basis
        for col in 0..rank {
            let pivot = &self.int_basis[col][col];
            let (q, r) = y[col].div_rem(pivot);
            if !r.is_zero() {
                return Ok(false);
            }
            for k in col..rank {
                let sub = &q * &self.int_basis[col][k];
                y[k] -= sub;
            }
        }
        Ok(y.iter().all(|v| v.is_zero()))
    }

    fn det_int_basis(&self) -> BigInt {
        (0..self.int_basis.len())
            .map(|i| self.int_basis[i][i].clone())
            .product()
    }

    /// `[Lambda_w : Lambda]`, as a ratio of lattice determinants.
    pub fn index_in_weight_lattice(&self) -> u64 {
        let rank = self.datum.rank() as u32;
        // det(basis) * det(C) = det_int_basis * det(C) / denom^rank
        let num = self.det_int_basis() * BigInt::from(self.datum.det_cartan());
        let den = self.denom.pow(rank);
        let (q, r) = num.div_rem(&den);
        assert!(r.is_zero(), "index of sublattice of the weight lattice is integral");
        u64::try_from(q.abs()).expect("small index")
    }

    /// `[Lambda : Lambda_r]`.
    pub fn index_over_root_lattice(&self) -> u64 {
        let rank = self.datum.rank() as u32;
        let num = self.denom.pow(rank);
        let den = self.det_int_basis();
        let (q, r) = num.div_rem(&den);
        assert!(r.is_zero(), "index over the root lattice is integral");
        u64::try_from(q.abs()).expect("small index")
    }

    /// Dual lattice inside the weight lattice with respect to the invariant
    /// pairing: `{ x : b(x, y) integral for all y in Lambda }`.
    pub fn dual_in_weight_lattice(&self) -> Result<CharLattice> {
        let rank = self.datum.rank();
        // rows of (B C), where B has the basis vectors as rows
        let bc: Vec<Vec<Rat>> = self
            .basis
            .iter()
            .map(|b| {
                (0..rank)
                    .map(|j| {
                        (0..rank)
                            .map(|k| &b[k] * Rat::from_integer(self.datum.cartan()[k][j].into()))
                            .sum()
                    })
                    .collect()
            })
            .collect();
        let inv = intlin::invert_rational(&bc)
            .ok_or_else(|| Error::Inconsistency("degenerate pairing matrix".into()))?;
        // dual basis vectors are the columns of (B C)^{-1}
        let gens: Vec<Vec<Rat>> = (0..rank)
            .map(|j| (0..rank).map(|i| inv[i][j].clone()).collect())
            .collect();
        CharLattice::from_generators(self.datum.clone(), &gens, None)
    }

    /// Basis expressed in fundamental-weight coordinates (rows `C b_i`);
    /// integral because the lattice lies in the weight lattice.
    pub fn basis_in_fw_coords(&self) -> Vec<Vec<BigInt>> {
        let rank = self.datum.rank();
        self.basis
            .iter()
            .map(|b| {
                (0..rank)
                    .map(|i| {
                        let p: Rat = (0..rank)
                            .map(|j| &b[j] * Rat::from_integer(self.datum.cartan()[i][j].into()))
                            .sum();
                        debug_assert!(p.is_integer());
                        p.to_integer()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn same_lattice(&self, other: &CharLattice) -> bool {
        self.datum.same_datum(&other.datum)
            && self.denom == other.denom
            && self.int_basis == other.int_basis
    }
}

/// Lattice of `SL_n/mu_m`: coroots of `A_{n-1}` together with
/// `tau = (1/m)(alpha_1 + 2 alpha_2 + ... + (n-1) alpha_{n-1})`.
pub fn lattice_sl_mod_mu(n: u64, m: u64) -> Result<CharLattice> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if m < 1 || !n.is_multiple_of(m) {
        return Err(Error::invalid("m must divide n"));
    }
    let datum = rootsys::datum(Family::A, (n - 1) as usize)?;
    let rank = datum.rank();
    let tau: Vec<Rat> = (1..=rank as i64)
        .map(|i| Rat::new(BigInt::from(i), BigInt::from(m)))
        .collect();
    let mut gens: Vec<Vec<Rat>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    gens.push(tau.clone());
    CharLattice::from_generators(datum, &gens, Some(tau))
}

/// Lattice of `HSpin_{4n}` on the root system `D_{2n}`: coroots together
/// with `tau = (1/2) sum over odd i of alpha_i`.
pub fn lattice_half_spin(n: u64) -> Result<CharLattice> {
    if n < 2 {
        return Err(Error::invalid("half-spin groups need n >= 2 (rank 2n >= 4)"));
    }
    let rank = (2 * n) as usize;
    let datum = rootsys::datum(Family::D, rank)?;
    let tau: Vec<Rat> = (0..rank)
        .map(|i| if i % 2 == 0 { Rat::new(BigInt::one(), BigInt::from(2)) } else { Rat::zero() })
        .collect();
    let mut gens: Vec<Vec<Rat>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    gens.push(tau.clone());
    CharLattice::from_generators(datum, &gens, Some(tau))
}

/// Which split group a report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    /// `SL_n/mu_m` on `A_{n-1}`.
    SlModMu { n: u64, m: u64 },
    /// `HSpin_{4n}` on `D_{2n}`; the parameter is `n`.
    HalfSpin { n: u64 },
    SimplyConnected { family: Family, rank: usize },
    Adjoint { family: Family, rank: usize },
}

/// A resolved group: its root datum, the lattice carrying the invariant
/// quadratic form (generated by coroots and `tau`), and the dual lattice
/// whose dominant elements are the highest weights of representations.
///
/// The two lattices are dual to each other inside the weight lattice and
/// genuinely differ in general (for `PGL_2` the first is the full weight
/// lattice while representation weights live in the root lattice).
#[derive(Debug, Clone)]
pub struct GroupSpec {
    kind: GroupKind,
    datum: DatumRef,
    lattice: CharLattice,
    rep_lattice: CharLattice,
    center_char_order: u64,
}

impl GroupSpec {
    pub fn sl_mod_mu(n: u64, m: u64) -> Result<GroupSpec> {
        let lattice = lattice_sl_mod_mu(n, m)?;
        GroupSpec::from_lattice(GroupKind::SlModMu { n, m }, lattice)
    }

    /// `HSpin_{4n}`; `n >= 2`.
    pub fn half_spin(n: u64) -> Result<GroupSpec> {
        let lattice = lattice_half_spin(n)?;
        GroupSpec::from_lattice(GroupKind::HalfSpin { n }, lattice)
    }

    pub fn simply_connected(family: Family, rank: usize) -> Result<GroupSpec> {
        let datum = rootsys::datum(family, rank)?;
        let lattice = CharLattice::root_lattice(datum);
        GroupSpec::from_lattice(GroupKind::SimplyConnected { family, rank }, lattice)
    }

    pub fn adjoint(family: Family, rank: usize) -> Result<GroupSpec> {
        let datum = rootsys::datum(family, rank)?;
        let lattice = CharLattice::weight_lattice(datum);
        GroupSpec::from_lattice(GroupKind::Adjoint { family, rank }, lattice)
    }

    fn from_lattice(kind: GroupKind, lattice: CharLattice) -> Result<GroupSpec> {
        let datum = lattice.datum().clone();
        let rep_lattice = lattice.dual_in_weight_lattice()?;
        let center_char_order = lattice.index_over_root_lattice();
        if let GroupKind::SlModMu { m, .. } = kind {
            if center_char_order != m {
                return Err(Error::Inconsistency(format!(
                    "center character order {center_char_order} != m = {m}"
                )));
            }
        }
        if let GroupKind::HalfSpin { .. } = kind {
            if center_char_order != 2 {
                return Err(Error::Inconsistency(
                    "half-spin center character order must be 2".into(),
                ));
            }
        }
        Ok(GroupSpec { kind, datum, lattice, rep_lattice, center_char_order })
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn datum(&self) -> &DatumRef {
        &self.datum
    }

    /// Lattice generated by the coroots and `tau`; the form group `Q(G)`
    /// is measured on this lattice.
    pub fn lattice(&self) -> &CharLattice {
        &self.lattice
    }

    /// Dual lattice: dominant elements here are the highest weights of the
    /// group's representations, the search space for `n_G`.
    pub fn rep_lattice(&self) -> &CharLattice {
        &self.rep_lattice
    }

    /// Order of the character group of the kernel of the universal cover.
    pub fn center_char_order(&self) -> u64 {
        self.center_char_order
    }

    pub fn name(&self) -> String {
        match self.kind {
            GroupKind::SlModMu { n, m: 1 } => format!("SL_{n}"),
            GroupKind::SlModMu { n, m } => format!("SL_{n}/μ_{m}"),
            GroupKind::HalfSpin { n } => format!("HSpin_{}", 4 * n),
            GroupKind::SimplyConnected { family: Family::A, rank } => format!("SL_{}", rank + 1),
            GroupKind::SimplyConnected { family: Family::D, rank } => format!("Spin_{}", 2 * rank),
            GroupKind::Adjoint { family: Family::A, rank } => format!("PGL_{}", rank + 1),
            GroupKind::Adjoint { family: Family::D, rank } => format!("PGO_{}", 2 * rank),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn pgl2_lattice_is_the_full_weight_lattice() {
        let lat = lattice_sl_mod_mu(2, 2).unwrap();
        assert_eq!(lat.tau().unwrap(), &[ratio(1, 2)]);
        assert_eq!(lat.index_in_weight_lattice(), 1);
        assert_eq!(lat.index_over_root_lattice(), 2);
    }

    #[test]
    fn m_equal_one_gives_the_root_lattice() {
        for n in [2u64, 5, 9] {
            let lat = lattice_sl_mod_mu(n, 1).unwrap();
            let root = CharLattice::root_lattice(lat.datum().clone());
            assert!(lat.same_lattice(&root));
        }
    }

    #[test]
    fn sl8_mu2_index_is_four() {
        let lat = lattice_sl_mod_mu(8, 2).unwrap();
        let tau: Vec<Rat> = (1..=7).map(|i| ratio(i, 2)).collect();
        assert_eq!(lat.tau().unwrap(), &tau[..]);
        assert_eq!(lat.index_in_weight_lattice(), 4);
        assert_eq!(lat.index_over_root_lattice(), 2);
    }

    #[test]
    fn half_spin_lattices() {
        let l2 = lattice_half_spin(2).unwrap();
        assert_eq!(l2.tau().unwrap(), &[ratio(1, 2), rat(0), ratio(1, 2), rat(0)]);
        assert_eq!(l2.index_in_weight_lattice(), 2);
        assert_eq!(l2.index_over_root_lattice(), 2);

        let l3 = lattice_half_spin(3).unwrap();
        let root = CharLattice::root_lattice(l3.datum().clone());
        assert!(!root.contains(l3.tau().unwrap()).unwrap());
        assert!(l3.contains(l3.tau().unwrap()).unwrap());

        // all basis vectors of the n = 4 lattice pair integrally with coroots
        let l4 = lattice_half_spin(4).unwrap();
        assert_eq!(l4.basis().len(), 8);
        for row in l4.basis_in_fw_coords() {
            assert_eq!(row.len(), 8);
        }
    }

    #[test]
    fn membership_examples() {
        let lat = lattice_sl_mod_mu(8, 2).unwrap();
        let alpha3 = lat.datum().simple_coroot(3).unwrap();
        assert!(lat.contains(&alpha3).unwrap());
        let half_tau: Vec<Rat> = lat.tau().unwrap().iter().map(|x| x / rat(2)).collect();
        assert!(!lat.contains(&half_tau).unwrap());
        let zero = vec![rat(0); 7];
        assert!(lat.contains(&zero).unwrap());
        assert!(matches!(
            lat.contains(&vec![rat(0); 3]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn root_lattice_index_is_the_fundamental_group_order() {
        for n in [2u64, 4, 7, 12] {
            let datum = rootsys::datum(Family::A, (n - 1) as usize).unwrap();
            let root = CharLattice::root_lattice(datum);
            assert_eq!(root.index_in_weight_lattice(), n);
        }
    }

    #[test]
    fn index_multiplicativity() {
        for (n, m) in [(8u64, 2u64), (12, 6), (9, 3), (30, 5)] {
            let lat = lattice_sl_mod_mu(n, m).unwrap();
            let det = lat.datum().det_cartan();
            assert_eq!(lat.index_in_weight_lattice() * lat.index_over_root_lattice(), det);
        }
        for n in 2..=6u64 {
            let lat = lattice_half_spin(n).unwrap();
            assert_eq!(lat.index_in_weight_lattice() * lat.index_over_root_lattice(), 4);
        }
    }

    #[test]
    fn construction_is_deterministic() {
        let a = lattice_sl_mod_mu(12, 4).unwrap();
        let b = lattice_sl_mod_mu(12, 4).unwrap();
        assert_eq!(a.basis(), b.basis());
        assert!(a.same_lattice(&b));
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(lattice_sl_mod_mu(8, 3).is_err());
        assert!(lattice_sl_mod_mu(1, 1).is_err());
        assert!(lattice_half_spin(1).is_err());
        assert!(lattice_half_spin(0).is_err());
    }

    #[test]
    fn duals_of_the_endpoint_lattices() {
        let datum = rootsys::datum(Family::A, 3).unwrap();
        let root = CharLattice::root_lattice(datum.clone());
        let weight = CharLattice::weight_lattice(datum);
        assert!(root.dual_in_weight_lattice().unwrap().same_lattice(&weight));
        assert!(weight.dual_in_weight_lattice().unwrap().same_lattice(&root));
    }

    #[test]
    fn half_spin_dual_depends_on_parity() {
        // n even: self-dual; n odd: the dual is the other half-spin class
        let l4 = lattice_half_spin(4).unwrap();
        assert!(l4.dual_in_weight_lattice().unwrap().same_lattice(&l4));
        let l3 = lattice_half_spin(3).unwrap();
        let dual = l3.dual_in_weight_lattice().unwrap();
        assert!(!dual.same_lattice(&l3));
        assert_eq!(dual.index_in_weight_lattice(), 2);
        // the dual still contains a spin class, not the vector class omega_1
        let omega1 = l3.datum().fundamental_weight(1).unwrap();
        assert!(!dual.contains(&omega1).unwrap());
    }

    #[test]
    fn group_specs_carry_both_lattices() {
        let pgl2 = GroupSpec::sl_mod_mu(2, 2).unwrap();
        assert_eq!(pgl2.center_char_order(), 2);
        let root = CharLattice::root_lattice(pgl2.datum().clone());
        assert!(pgl2.rep_lattice().same_lattice(&root));
        assert_eq!(pgl2.lattice().index_in_weight_lattice(), 1);

        let hspin8 = GroupSpec::half_spin(2).unwrap();
        assert_eq!(hspin8.center_char_order(), 2);
        assert!(hspin8.rep_lattice().same_lattice(hspin8.lattice()));

        let sc = GroupSpec::simply_connected(Family::A, 3).unwrap();
        assert_eq!(sc.center_char_order(), 1);
        let weight = CharLattice::weight_lattice(sc.datum().clone());
        assert!(sc.rep_lattice().same_lattice(&weight));

        let adj = GroupSpec::adjoint(Family::D, 4).unwrap();
        assert_eq!(adj.center_char_order(), 4);
    }

    #[test]
    fn group_names() {
        assert_eq!(GroupSpec::sl_mod_mu(8, 2).unwrap().name(), "SL_8/μ_2");
        assert_eq!(GroupSpec::sl_mod_mu(8, 1).unwrap().name(), "SL_8");
        assert_eq!(GroupSpec::half_spin(4).unwrap().name(), "HSpin_16");
        assert_eq!(GroupSpec::adjoint(Family::A, 1).unwrap().name(), "PGL_2");
    }
}
