//! Root-system data for the simply-laced families A and D.
//!
//! Everything is expressed in simple-root coordinates: a vector `x` stands
//! for `sum x_i alpha_i`. Because both families are simply laced, roots and
//! coroots are identified throughout and the invariant bilinear form is the
//! Cartan matrix itself (see `qform`).

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::intlin;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::A => write!(f, "A"),
            Family::D => write!(f, "D"),
        }
    }
}

/// Exact data for one irreducible root system.
#[derive(Debug, Clone)]
pub struct RootDatum {
    family: Family,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Rat>>,
    /// Positive (co)roots in simple-root coordinates, sorted by height then
    /// lexicographically.
    positive_coroots: Vec<Vec<i64>>,
    /// Half-sum of positive roots = sum of fundamental weights.
    rho: Vec<Rat>,
    coxeter_number: u64,
    dim_g: u64,
    det_cartan: u64,
}

/// Node adjacency for the supported diagrams.
///
/// For `D_r` the nodes `1..=r-2` form a chain and both `r-1` and `r` attach
/// to node `r-2`, so the fork nodes carry the two spin classes.
fn cartan_matrix(family: Family, rank: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let join = |c: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match family {
        Family::A => {
            for i in 0..rank.saturating_sub(1) {
                join(&mut c, i, i + 1);
            }
        }
        Family::D => {
            for i in 0..rank - 2 {
                join(&mut c, i, i + 1);
            }
            join(&mut c, rank - 3, rank - 1);
        }
    }
    c
}

/// Build the root datum for `family` of the given rank.
pub fn build_root_datum(family: Family, rank: usize) -> Result<RootDatum> {
    match family {
        Family::A if rank >= 1 => {}
        Family::A => return Err(Error::invalid("family A requires rank >= 1")),
        Family::D if rank >= 3 => {}
        Family::D => return Err(Error::invalid("family D requires rank >= 3")),
    }
    let cartan = cartan_matrix(family, rank);
    let cartan_rat: Vec<Vec<Rat>> = cartan
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x.into())).collect())
        .collect();
    let cartan_inv = intlin::invert_rational(&cartan_rat)
        .ok_or_else(|| Error::Inconsistency("singular Cartan matrix".into()))?;

    let positive_coroots = positive_roots_by_closure(&cartan);
    let npos = positive_coroots.len() as u64;
    let ones: Vec<Rat> = vec![Rat::one(); rank];
    let rho = intlin::mat_vec_rat(&cartan_inv, &ones);

    if !(2 * npos).is_multiple_of(rank as u64) {
        return Err(Error::Inconsistency("root count not divisible by rank".into()));
    }
    let coxeter_number = 2 * npos / rank as u64;
    let dim_g = rank as u64 + 2 * npos;

    let hnf = intlin::hnf_rows(
        cartan
            .iter()
            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
            .collect(),
    );
    let det: BigInt = (0..rank).map(|i| hnf[i][i].clone()).product();
    let det_cartan = u64::try_from(det.abs())
        .map_err(|_| Error::Inconsistency("Cartan determinant overflow".into()))?;

    Ok(RootDatum {
        family,
        rank,
        cartan,
        cartan_inv,
        positive_coroots,
        rho,
        coxeter_number,
        dim_g,
        det_cartan,
    })
}

/// Closure of the simple (co)roots under all simple reflections, restricted
/// to the positive cone.
fn positive_roots_by_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let rank = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: Vec<Vec<i64>> = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push(e);
    }
    while let Some(v) = queue.pop() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
            let mut w = v.clone();
            w[i] -= pairing;
            if w.iter().all(|&x| x >= 0) && w.iter().any(|&x| x > 0) && !seen.contains(&w) {
                seen.insert(w.clone());
                queue.push(w);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
    roots
}

impl RootDatum {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn cartan_inv(&self) -> &[Vec<Rat>] {
        &self.cartan_inv
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn rho(&self) -> &[Rat] {
        &self.rho
    }

    pub fn coxeter_number(&self) -> u64 {
        self.coxeter_number
    }

    pub fn dim_g(&self) -> u64 {
        self.dim_g
    }

    pub fn det_cartan(&self) -> u64 {
        self.det_cartan
    }

    /// The `i`-th simple coroot (1-based) as a rational vector.
    pub fn simple_coroot(&self, i: usize) -> Result<Vec<Rat>> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        let mut e = vec![Rat::from_integer(0.into()); self.rank];
        e[i - 1] = Rat::one();
        Ok(e)
    }

    /// Fundamental weight `omega_i` (1-based) in simple-root coordinates:
    /// the `i`-th column of the inverse Cartan matrix.
    pub fn fundamental_weight(&self, i: usize) -> Result<Vec<Rat>> {
        if i == 0 || i > self.rank {
            return Err(Error::IndexOutOfRange { index: i, rank: self.rank });
        }
        Ok((0..self.rank).map(|j| self.cartan_inv[j][i - 1].clone()).collect())
    }

    pub fn same_datum(&self, other: &RootDatum) -> bool {
        self.family == other.family && self.rank == other.rank
    }
}

/// Structure of the quotient of the weight lattice by the root lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalGroupStruct {
    /// Elementary divisors `>= 2`; their product is `|det(Cartan)|`.
    pub cyclic_factors: Vec<u64>,
}

/// Elementary divisors of the cokernel of the Cartan matrix, i.e. of the
/// fundamental group of the root system.
pub fn fundamental_group(datum: &RootDatum) -> FundamentalGroupStruct {
    let m: Vec<Vec<BigInt>> = datum
        .cartan
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let divisors = intlin::smith_divisors(&m);
    let cyclic_factors = divisors
        .iter()
        .filter(|d| **d > BigInt::one())
        .map(|d| u64::try_from(d).expect("small divisor"))
        .collect();
    FundamentalGroupStruct { cyclic_factors }
}

/// Simple reflection `s_i(x) = x - b(x, alpha_i) alpha_i` with `i` 1-based.
pub fn simple_reflection(datum: &RootDatum, i: usize, x: &[Rat]) -> Result<Vec<Rat>> {
    if i == 0 || i > datum.rank {
        return Err(Error::IndexOutOfRange { index: i, rank: datum.rank });
    }
    if x.len() != datum.rank {
        return Err(Error::DimensionMismatch { expected: datum.rank, got: x.len() });
    }
    let pairing: Rat = (0..datum.rank)
        .map(|j| &x[j] * Rat::from_integer(datum.cartan[i - 1][j].into()))
        .sum();
    let mut out = x.to_vec();
    out[i - 1] -= pairing;
    Ok(out)
}

/// Shared handle used by lattices, forms and group specs.
pub type DatumRef = Arc<RootDatum>;

pub fn datum(family: Family, rank: usize) -> Result<DatumRef> {
    Ok(Arc::new(build_root_datum(family, rank)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    #[test]
    fn a3_textbook_data() {
        let d = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(
            d.cartan(),
            &[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]
        );
        assert_eq!(d.positive_coroots().len(), 6);
        assert_eq!(d.dim_g(), 15);
        assert_eq!(d.coxeter_number(), 4);
        assert_eq!(d.det_cartan(), 4);
    }

    #[test]
    fn d_family_counts_from_reflection_closure() {
        let d4 = build_root_datum(Family::D, 4).unwrap();
        assert_eq!(d4.positive_coroots().len(), 12);
        assert_eq!(d4.dim_g(), 28);
        assert_eq!(d4.det_cartan(), 4);

        let d8 = build_root_datum(Family::D, 8).unwrap();
        assert_eq!(d8.positive_coroots().len(), 56);
        assert_eq!(d8.dim_g(), 120);
        assert_eq!(d8.coxeter_number(), 14);
    }

    #[test]
    fn coxeter_number_of_a_family_is_n() {
        for n in 2..=10usize {
            let d = build_root_datum(Family::A, n - 1).unwrap();
            assert_eq!(d.coxeter_number(), n as u64);
        }
    }

    #[test]
    fn rho_is_half_sum_of_positive_roots() {
        for (fam, rank) in [(Family::A, 4), (Family::D, 5)] {
            let d = build_root_datum(fam, rank).unwrap();
            let mut half_sum = vec![rat(0); rank];
            for r in d.positive_coroots() {
                for (i, &c) in r.iter().enumerate() {
                    half_sum[i] += ratio(c, 2);
                }
            }
            assert_eq!(half_sum, d.rho());
        }
    }

    #[test]
    fn fundamental_groups() {
        let a3 = build_root_datum(Family::A, 3).unwrap();
        assert_eq!(fundamental_group(&a3).cyclic_factors, vec![4]);
        let d4 = build_root_datum(Family::D, 4).unwrap();
        assert_eq!(fundamental_group(&d4).cyclic_factors, vec![2, 2]);
        let a8 = build_root_datum(Family::A, 8).unwrap();
        assert_eq!(fundamental_group(&a8).cyclic_factors, vec![9]);
        let d5 = build_root_datum(Family::D, 5).unwrap();
        assert_eq!(fundamental_group(&d5).cyclic_factors, vec![4]);
    }

    #[test]
    fn fundamental_group_product_is_cartan_determinant() {
        for (fam, rank) in [(Family::A, 1), (Family::A, 7), (Family::D, 4), (Family::D, 7)] {
            let d = build_root_datum(fam, rank).unwrap();
            let product: u64 = fundamental_group(&d).cyclic_factors.iter().product();
            assert_eq!(product, d.det_cartan());
        }
    }

    #[test]
    fn reflection_negates_own_root() {
        let a1 = build_root_datum(Family::A, 1).unwrap();
        let alpha = a1.simple_coroot(1).unwrap();
        assert_eq!(simple_reflection(&a1, 1, &alpha).unwrap(), vec![rat(-1)]);
    }

    #[test]
    fn reflection_on_adjacent_root() {
        let a2 = build_root_datum(Family::A, 2).unwrap();
        let alpha2 = a2.simple_coroot(2).unwrap();
        let s1 = simple_reflection(&a2, 1, &alpha2).unwrap();
        assert_eq!(s1, vec![rat(1), rat(1)]);
    }

    #[test]
    fn reflection_is_involution() {
        let d4 = build_root_datum(Family::D, 4).unwrap();
        // a fixed spread of rational vectors; the proptest suite covers more
        for k in 0..20i64 {
            let x: Vec<Rat> = (0..4)
                .map(|j| ratio(k * (j + 2) - 7 * j - 3, (j + k.rem_euclid(3)) + 1))
                .collect();
            for i in 1..=4 {
                let once = simple_reflection(&d4, i, &x).unwrap();
                let twice = simple_reflection(&d4, i, &once).unwrap();
                assert_eq!(twice, x);
            }
        }
    }

    #[test]
    fn invalid_inputs_rejected() {
        assert!(build_root_datum(Family::A, 0).is_err());
        assert!(build_root_datum(Family::D, 2).is_err());
        let a2 = build_root_datum(Family::A, 2).unwrap();
        assert!(matches!(
            simple_reflection(&a2, 3, &[rat(0), rat(0)]),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            simple_reflection(&a2, 1, &[rat(0)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn reflections_permute_positive_coroots_up_to_own_negation() {
        for (fam, rank) in [(Family::A, 4), (Family::D, 4), (Family::D, 5)] {
            let d = build_root_datum(fam, rank).unwrap();
            let positives: std::collections::HashSet<Vec<i64>> =
                d.positive_coroots().iter().cloned().collect();
            for i in 1..=rank {
                for root in d.positive_coroots() {
                    let x: Vec<Rat> = root.iter().map(|&c| rat(c)).collect();
                    let image = simple_reflection(&d, i, &x).unwrap();
                    let as_int: Vec<i64> = image
                        .iter()
                        .map(|v| {
                            assert!(v.is_integer());
                            i64::try_from(v.to_integer()).unwrap()
                        })
                        .collect();
                    let negated: Vec<i64> = as_int.iter().map(|&c| -c).collect();
                    if positives.contains(&as_int) {
                        continue;
                    }
                    // only alpha_i itself may flip sign
                    assert!(positives.contains(&negated));
                    let mut e = vec![0i64; rank];
                    e[i - 1] = 1;
                    assert_eq!(negated, e);
                }
            }
        }
    }

    #[test]
    fn positive_coroot_counts_match_family_formulas() {
        for rank in 1..=8 {
            let d = build_root_datum(Family::A, rank).unwrap();
            assert_eq!(d.positive_coroots().len(), rank * (rank + 1) / 2);
        }
        for rank in 3..=8 {
            let d = build_root_datum(Family::D, rank).unwrap();
            assert_eq!(d.positive_coroots().len(), rank * (rank - 1));
        }
    }
}
