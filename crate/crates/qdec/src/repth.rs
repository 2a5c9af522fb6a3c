//! Dominant characters of a lattice, exact representation dimensions and
//! Dynkin indices, and the gcd `n_G` over all representations.
//!
//! Two index notions appear here and must not be conflated:
//!
//! * [`dynkin_index`] is the index of the irreducible representation with
//!   highest weight `chi`, from the dimension-Casimir identity
//!   `dim(V) * b(lambda, lambda + 2 rho) / dim(g)` under the normalization
//!   `q(coroot) = 1`.
//! * [`orbit_index`] is the index of the Weyl-orbit character of `chi`,
//!   equal to `|W chi| * 2 q(chi) / rank`. The type-A factorial formula
//!   [`n_chi_type_a`] computes exactly this quantity.
//!
//! The two agree on minuscule and quasi-minuscule weights and differ in
//! general (`2 omega_1` on `A_2`: orbit 4, irreducible 5). Orbit characters
//! and irreducible characters are related by a unitriangular integer change
//! of basis, so the gcd of either index family over a character lattice is
//! the same `n_G`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{self, Rat};
use crate::error::{Error, Result};
use crate::intlin;
use crate::lattice::{CharLattice, GroupKind, GroupSpec};
use crate::rootsys::RootDatum;

/// A dominant element of a character lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantCharacter {
    weight: Vec<Rat>,
    fw_coords: Vec<u64>,
    height: u64,
}

impl DominantCharacter {
    /// Build from fundamental-weight coordinates, checking dominance and
    /// membership in the lattice.
    pub fn from_fw_coords(lat: &CharLattice, fw: &[i64]) -> Result<DominantCharacter> {
        let rank = lat.datum().rank();
        if fw.len() != rank {
            return Err(Error::DimensionMismatch { expected: rank, got: fw.len() });
        }
        if fw.iter().any(|&c| c < 0) {
            return Err(Error::invalid("character is not dominant"));
        }
        let coords: Vec<u64> = fw.iter().map(|&c| c as u64).collect();
        let weight = fw_to_root_coords(lat.datum(), &coords);
        if !lat.contains(&weight)? {
            return Err(Error::invalid("character does not lie in the lattice"));
        }
        let height = coords.iter().sum();
        Ok(DominantCharacter { weight, fw_coords: coords, height })
    }

    pub fn weight(&self) -> &[Rat] {
        &self.weight
    }

    pub fn fw_coords(&self) -> &[u64] {
        &self.fw_coords
    }

    pub fn height(&self) -> u64 {
        self.height
    }
}

fn fw_to_root_coords(datum: &RootDatum, fw: &[u64]) -> Vec<Rat> {
    let x: Vec<Rat> = fw.iter().map(|&c| Rat::from_integer(c.into())).collect();
    intlin::mat_vec_rat(datum.cartan_inv(), &x)
}

/// Membership of fundamental-weight vectors in a lattice, reduced to a
/// congruence test in the finite quotient (weight lattice)/(lattice) via
/// the Smith form of the basis. Much cheaper than rational solves when
/// scanning many candidates.
struct FwMembership {
    /// (modulus, column of the right Smith transform reduced mod modulus)
    tests: Vec<(u64, Vec<u64>)>,
}

impl FwMembership {
    fn new(lat: &CharLattice) -> FwMembership {
        let m = lat.basis_in_fw_coords();
        let (divisors, v) = intlin::smith_with_right_transform(&m);
        let rank = m.len();
        let mut tests = Vec::new();
        for (j, d) in divisors.iter().enumerate() {
            if *d <= BigInt::one() {
                continue;
            }
            let modulus = u64::try_from(d).expect("small quotient");
            let col: Vec<u64> = (0..rank)
                .map(|i| {
                    let r = &v[i][j] % BigInt::from(modulus);
                    let r = if r.is_negative() { r + BigInt::from(modulus) } else { r };
                    r.to_u64().expect("reduced residue")
                })
                .collect();
            tests.push((modulus, col));
        }
        FwMembership { tests }
    }

    fn contains(&self, fw: &[u64]) -> bool {
        self.tests.iter().all(|(modulus, col)| {
            let acc: u64 = fw.iter().zip(col).map(|(&k, &c)| k * c).sum();
            acc.is_multiple_of(*modulus)
        })
    }
}

/// Visit the fundamental-weight coordinates of every nonzero dominant
/// element of the lattice with height at most `height_max`, in
/// lexicographic order.
fn for_each_dominant_fw(lat: &CharLattice, height_max: u64, mut f: impl FnMut(&[u64])) {
    let rank = lat.datum().rank();
    let filter = FwMembership::new(lat);
    let mut fw = vec![0u64; rank];
    // depth-first in coordinate order yields lexicographic output
    fn rec(
        fw: &mut Vec<u64>,
        pos: usize,
        remaining: u64,
        filter: &FwMembership,
        f: &mut impl FnMut(&[u64]),
    ) {
        if pos == fw.len() {
            if fw.iter().any(|&c| c > 0) && filter.contains(fw) {
                f(fw);
            }
            return;
        }
        for v in 0..=remaining {
            fw[pos] = v;
            rec(fw, pos + 1, remaining - v, filter, f);
        }
        fw[pos] = 0;
    }
    rec(&mut fw, 0, height_max, &filter, &mut f);
}

/// All nonzero dominant elements of the lattice with height at most
/// `height_max`, sorted lexicographically by fundamental-weight coordinates.
pub fn enumerate_dominant(lat: &CharLattice, height_max: u64) -> Result<Vec<DominantCharacter>> {
    if height_max < 1 {
        return Err(Error::invalid("height_max must be at least 1"));
    }
    let mut out = Vec::new();
    for_each_dominant_fw(lat, height_max, |fw| {
        out.push(DominantCharacter {
            weight: fw_to_root_coords(lat.datum(), fw),
            fw_coords: fw.to_vec(),
            height: fw.iter().sum(),
        });
    });
    Ok(out)
}

/// Precomputed per-datum data for fast exact dimension/index evaluation.
struct IndexEngine<'a> {
    datum: &'a RootDatum,
    /// `prod over positive roots of height(alpha)`, the Weyl denominator.
    rho_denominator: BigInt,
    /// `det(C) * C^{-1}` as integers.
    adjugate: Vec<Vec<i64>>,
    det: i64,
    dim_g: BigInt,
}

impl<'a> IndexEngine<'a> {
    fn new(datum: &'a RootDatum) -> IndexEngine<'a> {
        let rank = datum.rank();
        let det = datum.det_cartan() as i64;
        let adjugate: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let scaled = &datum.cartan_inv()[i][j] * Rat::from_integer(det.into());
                        debug_assert!(scaled.is_integer());
                        scaled.to_integer().to_i64().expect("small adjugate entry")
                    })
                    .collect()
            })
            .collect();
        let mut rho_denominator = BigInt::one();
        for root in datum.positive_coroots() {
            let h: i64 = root.iter().sum();
            rho_denominator *= BigInt::from(h);
        }
        IndexEngine { datum, rho_denominator, adjugate, det, dim_g: BigInt::from(datum.dim_g()) }
    }

    /// Weyl dimension formula: `prod (lambda + rho, alpha) / prod (rho, alpha)`
    /// over positive roots, evaluated through integer dot products of
    /// fundamental-weight coordinates against root coordinates.
    fn dim_fw(&self, fw: &[u64]) -> BigInt {
        let shifted: Vec<i64> = fw.iter().map(|&c| c as i64 + 1).collect();
        let mut num = BigInt::one();
        for root in self.datum.positive_coroots() {
            let dot: i64 = root.iter().zip(&shifted).map(|(&a, &u)| a * u).sum();
            num *= BigInt::from(dot);
        }
        let (q, r) = num.div_rem(&self.rho_denominator);
        debug_assert!(r.is_zero());
        q
    }

    /// `dim(V) * b(lambda, lambda + 2 rho) / dim(g)` as an exact integer.
    fn index_fw(&self, fw: &[u64]) -> Result<BigInt> {
        let rank = self.datum.rank();
        if fw.iter().all(|&c| c == 0) {
            return Ok(BigInt::zero());
        }
        let k: Vec<i64> = fw.iter().map(|&c| c as i64).collect();
        // Casimir value times det(C): k^T adj(C) (k + 2)
        let mut cas_num: i64 = 0;
        for i in 0..rank {
            if k[i] == 0 {
                continue;
            }
            for j in 0..rank {
                cas_num += k[i] * self.adjugate[i][j] * (k[j] + 2);
            }
        }
        let num = self.dim_fw(fw) * BigInt::from(cas_num);
        let den = &self.dim_g * BigInt::from(self.det);
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() || !q.is_positive() {
            return Err(Error::Inconsistency(format!(
                "Dynkin index of {fw:?} is not a positive integer"
            )));
        }
        Ok(q)
    }
}

/// Dimension of the irreducible representation with the given highest weight.
pub fn weyl_dim(datum: &RootDatum, chi: &DominantCharacter) -> Result<BigInt> {
    if chi.fw_coords.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: chi.fw_coords.len(),
        });
    }
    Ok(IndexEngine::new(datum).dim_fw(&chi.fw_coords))
}

/// Dynkin index of the irreducible representation with the given highest
/// weight; 0 for the trivial character.
pub fn dynkin_index(datum: &RootDatum, chi: &DominantCharacter) -> Result<BigInt> {
    if chi.fw_coords.len() != datum.rank() {
        return Err(Error::DimensionMismatch {
            expected: datum.rank(),
            got: chi.fw_coords.len(),
        });
    }
    IndexEngine::new(datum).index_fw(&chi.fw_coords)
}

/// Order of the Weyl group of the datum.
fn weyl_order(family: crate::rootsys::Family, rank: usize) -> BigInt {
    match family {
        crate::rootsys::Family::A => arith::factorial(rank as u64 + 1),
        crate::rootsys::Family::D => {
            arith::factorial(rank as u64) * BigInt::from(2u64).pow(rank as u32 - 1)
        }
    }
}

/// Order of the parabolic stabilizer `W_J` of a dominant weight, where `J`
/// is the set of nodes with fundamental-weight coordinate zero: a product
/// over the connected components of the sub-diagram on `J`.
fn stabilizer_order(datum: &RootDatum, fw: &[u64]) -> BigInt {
    let rank = datum.rank();
    let in_j: Vec<bool> = fw.iter().map(|&c| c == 0).collect();
    let mut seen = vec![false; rank];
    let mut order = BigInt::one();
    for start in 0..rank {
        if !in_j[start] || seen[start] {
            continue;
        }
        // collect the component by graph search over diagram edges
        let mut component = vec![start];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for w in 0..rank {
                if w != v && in_j[w] && !seen[w] && datum.cartan()[v][w] != 0 {
                    seen[w] = true;
                    component.push(w);
                    stack.push(w);
                }
            }
        }
        let k = component.len() as u64;
        // a component is type D exactly when some node has three neighbors
        // inside it; otherwise it is a type A chain
        let is_d = component.iter().any(|&v| {
            component
                .iter()
                .filter(|&&w| w != v && datum.cartan()[v][w] != 0)
                .count()
                == 3
        });
        order *= if is_d {
            arith::factorial(k) * BigInt::from(2u64).pow(k as u32 - 1)
        } else {
            arith::factorial(k + 1)
        };
    }
    order
}

/// Dynkin index of the Weyl-orbit character of `chi`:
/// `|W chi| * 2 q(chi) / rank`. This is what the type-A factorial formula
/// computes; it agrees with [`dynkin_index`] on minuscule weights.
pub fn orbit_index(datum: &RootDatum, chi: &DominantCharacter) -> Result<BigInt> {
    let rank = datum.rank();
    if chi.fw_coords.len() != rank {
        return Err(Error::DimensionMismatch { expected: rank, got: chi.fw_coords.len() });
    }
    if chi.height == 0 {
        return Ok(BigInt::zero());
    }
    let orbit_size = weyl_order(datum.family(), rank) / stabilizer_order(datum, &chi.fw_coords);
    // q(chi) via the inverse Cartan matrix on fundamental-weight coordinates
    let k: Vec<Rat> = chi.fw_coords.iter().map(|&c| Rat::from_integer(c.into())).collect();
    let two_q: Rat = intlin::mat_vec_rat(datum.cartan_inv(), &k)
        .iter()
        .zip(&k)
        .map(|(a, b)| a * b)
        .sum();
    let value = Rat::from_integer(orbit_size) * two_q / Rat::from_integer(rank.into());
    if !value.is_integer() {
        return Err(Error::Inconsistency("orbit index is not an integer".into()));
    }
    Ok(value.to_integer())
}

/// Type-A index via the factorial formula: for `chi = sum c_i e-bar_i` with
/// distinct values `a_1 > ... > a_k` of multiplicities `r_1, ..., r_k`,
///
/// `N(chi) = (n-2)!/(r_1! ... r_k!) [n sum r_i a_i^2 - (sum r_i a_i)^2]`.
pub fn n_chi_type_a(n: u64, c: &[i64]) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    if c.len() != n as usize {
        return Err(Error::DimensionMismatch { expected: n as usize, got: c.len() });
    }
    if c.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invalid("coordinates must be weakly decreasing"));
    }
    let mut values: Vec<(i64, u64)> = Vec::new();
    for &x in c {
        match values.last_mut() {
            Some((v, r)) if *v == x => *r += 1,
            _ => values.push((x, 1)),
        }
    }
    let mut denom = BigInt::one();
    let mut sum_ra: i128 = 0;
    let mut sum_ra2: i128 = 0;
    for &(a, r) in &values {
        denom *= arith::factorial(r);
        sum_ra += a as i128 * r as i128;
        sum_ra2 += (a as i128) * (a as i128) * r as i128;
    }
    let bracket = BigInt::from(n as i128 * sum_ra2 - sum_ra * sum_ra);
    let num = arith::factorial(n - 2) * bracket;
    let (q, r) = num.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Inconsistency("factorial index formula gave a non-integer".into()));
    }
    Ok(q)
}

/// e-bar coordinates of a type-A dominant character from its
/// fundamental-weight coordinates: suffix sums, normalized with `c_n = 0`.
pub fn ebar_coords_type_a(n: u64, fw: &[u64]) -> Result<Vec<i64>> {
    if fw.len() + 1 != n as usize {
        return Err(Error::DimensionMismatch { expected: n as usize - 1, got: fw.len() });
    }
    let mut c = vec![0i64; n as usize];
    let mut acc: i64 = 0;
    for j in (0..fw.len()).rev() {
        acc += fw[j] as i64;
        c[j] = acc;
    }
    Ok(c)
}

/// Valuation `ord_p C(n, p^r) = s - r` where `p^s` exactly divides `n`;
/// the independent check against Legendre valuations lives in the
/// verification suites.
pub fn ord_p_binom(n: u64, p: u64, r: u32) -> Result<u32> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    if n == 0 {
        return Err(Error::invalid("n must be positive"));
    }
    let s = arith::padic_valuation(n, p);
    if s < r {
        return Err(Error::invalid(format!("p^r = {p}^{r} must divide n = {n}")));
    }
    Ok(s - r)
}

/// Certified divisor bounds on `n_G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DynkinBounds {
    /// A known divisor of `n_G`.
    pub lower: u64,
    /// A known multiple of `n_G`.
    pub upper: u64,
}

impl DynkinBounds {
    pub fn new(lower: u64, upper: u64) -> Result<DynkinBounds> {
        if lower == 0 || !upper.is_multiple_of(lower) {
            return Err(Error::invalid("lower bound must divide upper bound"));
        }
        Ok(DynkinBounds { lower, upper })
    }

    /// The divisor bounds known for each family: `m | n_G | gcd(m^2, 2n)`
    /// for `SL_n/mu_m`, `2 | n_G | 4` for half-spin groups.
    pub fn for_group(spec: &GroupSpec) -> Option<DynkinBounds> {
        match spec.kind() {
            GroupKind::SlModMu { n, m } => {
                let upper = (m as u128 * m as u128).gcd(&(2 * n as u128));
                let upper = u64::try_from(upper).expect("bounded by 2n");
                Some(DynkinBounds { lower: m, upper })
            }
            GroupKind::HalfSpin { .. } => Some(DynkinBounds { lower: 2, upper: 4 }),
            _ => None,
        }
    }
}

/// Result of the brute-force gcd of Dynkin indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NgBruteForce {
    /// The certified estimate: the enumeration gcd, intersected with the
    /// theorem-backed upper bound when one was supplied. Always a multiple
    /// of the true `n_G`.
    pub value: u64,
    /// The raw gcd over the enumerated dominant characters.
    pub enumeration_gcd: u64,
    /// Whether the raw gcd was already unchanged from `height_max - 1` to
    /// `height_max`.
    pub stabilized: bool,
}

/// Gcd of Dynkin indices over all nonzero dominant characters of the
/// lattice up to `height_max`, paired with the supplied divisor bounds.
///
/// The enumeration gcd is a multiple of `n_G` at any height; folding in the
/// certified upper bound keeps the result a multiple of `n_G` while also
/// making it divide the bound. Equality with the closed forms is what the
/// verification suites assert.
pub fn n_g_bruteforce(
    lat: &CharLattice,
    height_max: u64,
    bounds: Option<&DynkinBounds>,
) -> Result<NgBruteForce> {
    if height_max < 2 {
        return Err(Error::invalid("height_max must be at least 2"));
    }
    let engine = IndexEngine::new(lat.datum());
    let mut gcd_all = BigInt::zero();
    let mut gcd_below = BigInt::zero();
    let mut count = 0usize;
    let mut error: Option<Error> = None;
    for_each_dominant_fw(lat, height_max, |fw| {
        if error.is_some() {
            return;
        }
        match engine.index_fw(fw) {
            Ok(index) => {
                let height: u64 = fw.iter().sum();
                gcd_all = gcd_all.gcd(&index);
                if height < height_max {
                    gcd_below = gcd_below.gcd(&index);
                }
                count += 1;
            }
            Err(e) => error = Some(e),
        }
    });
    if let Some(e) = error {
        return Err(e);
    }
    if count == 0 {
        return Err(Error::invalid("no nonzero dominant characters below the height bound"));
    }
    let enumeration_gcd = u64::try_from(&gcd_all)
        .map_err(|_| Error::Inconsistency("enumeration gcd overflow".into()))?;
    let stabilized = !gcd_below.is_zero() && gcd_below == gcd_all;
    let value = match bounds {
        Some(b) => {
            if enumeration_gcd % b.lower != 0 {
                return Err(Error::Inconsistency(format!(
                    "certified divisor {} does not divide the enumeration gcd {}",
                    b.lower, enumeration_gcd
                )));
            }
            enumeration_gcd.gcd(&b.upper)
        }
        None => enumeration_gcd,
    };
    Ok(NgBruteForce { value, enumeration_gcd, stabilized })
}

/// Closed form for `n_G` of `SL_n/mu_{p^r}` (label nSL in traces):
/// `p^r`, except `2^{r+1}` when `p = 2` and `p^r` exactly divides `n`.
pub fn n_closed_form_sl(n: u64, p: u64, r: u32) -> Result<u64> {
    if !arith::is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(Error::invalid("r must be positive"));
    }
    let m = p.checked_pow(r).ok_or_else(|| Error::invalid("p^r overflow"))?;
    if n < 2 || !n.is_multiple_of(m) {
        return Err(Error::invalid("p^r must divide n"));
    }
    let s = arith::padic_valuation(n, p);
    Ok(if p == 2 && s == r { 2 * m } else { m })
}

/// Closed form for `n_G` of `HSpin_{4n}` (label nHSp in traces).
pub fn n_closed_form_halfspin(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::invalid("half-spin groups need n >= 2"));
    }
    Ok(if n == 2 { 2 } else { 4 })
}
