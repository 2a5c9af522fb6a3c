//! Verification suites: every closed form is replayed against the exact
//! engine oracles over parameter grids. The CLI `verify` command and the
//! acceptance tests both run these.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{self, Rat};
use crate::error::Result;
use crate::invariants::{self, CrossCheck};
use crate::lattice::{lattice_half_spin, lattice_sl_mod_mu, CharLattice, GroupSpec};
use crate::qform::{self, InvariantForm};
use crate::repth::{self, DynkinBounds};
use crate::restrict;
use crate::rootsys::{self, simple_reflection, Family};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    QTau,
    Ell,
    Ng,
    TypeA,
    HalfSpinIndex,
    Tables,
    Restrict,
    Props,
}

impl Suite {
    pub fn all() -> [Suite; 8] {
        [
            Suite::QTau,
            Suite::Ell,
            Suite::Ng,
            Suite::TypeA,
            Suite::HalfSpinIndex,
            Suite::Tables,
            Suite::Restrict,
            Suite::Props,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::QTau => "qtau",
            Suite::Ell => "ell",
            Suite::Ng => "ng",
            Suite::TypeA => "typea",
            Suite::HalfSpinIndex => "halfspin-index",
            Suite::Tables => "tables",
            Suite::Restrict => "restrict",
            Suite::Props => "props",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CrossCheck>,
}

impl SuiteReport {
    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// The prime-power grid of the case tables: (p, r) with m = p^r.
const GRID: [(u64, u32); 5] = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1)];

/// Type-A groups in the grid are enumerated at height 4 up to this n.
const GRID_MAX_N: u64 = 27;

fn aggregate(name: String, total: usize, failures: Vec<String>) -> CrossCheck {
    let closed_form = format!("{total} checks, 0 failures");
    let oracle = if failures.is_empty() {
        closed_form.clone()
    } else {
        format!("{total} checks, {} failures: {}", failures.len(), failures.join("; "))
    };
    let pass = failures.is_empty();
    CrossCheck { name, closed_form, oracle, pass }
}

fn suite_q_tau(max_n: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for n in 2..=max_n {
        for m in divisors(n) {
            let lat = lattice_sl_mod_mu(n, m)?;
            let form = InvariantForm::new(lat.datum().clone());
            let closed = Rat::new((n * (n - 1)).into(), (2 * m * m).into());
            let oracle = form.q_eval(lat.tau().expect("tau"))?;
            checks.push(CrossCheck::equality(
                &format!("q_tau SL_{n}/mu_{m}"),
                &closed,
                &oracle,
            ));
        }
    }
    for n in 2..=8u64 {
        let lat = lattice_half_spin(n)?;
        let form = InvariantForm::new(lat.datum().clone());
        let closed = Rat::new(n.into(), 4.into());
        let oracle = form.q_eval(lat.tau().expect("tau"))?;
        checks.push(CrossCheck::equality(
            &format!("q_tau HSpin_{}", 4 * n),
            &closed,
            &oracle,
        ));
    }
    Ok(checks)
}

fn suite_ell(max_n: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for n in 2..=max_n {
        for m in divisors(n) {
            let lat = lattice_sl_mod_mu(n, m)?;
            let form = InvariantForm::new(lat.datum().clone());
            checks.push(CrossCheck::equality(
                &format!("ell SL_{n}/mu_{m}"),
                qform::ell_closed_form_sl(n, m)?,
                qform::ell_of_lattice(&form, &lat)?,
            ));
            checks.push(CrossCheck::equality(
                &format!("ell_minimality SL_{n}/mu_{m}"),
                true,
                qform::ell_minimality_witness(&form, &lat)?,
            ));
        }
    }
    for n in 2..=8u64 {
        let lat = lattice_half_spin(n)?;
        let form = InvariantForm::new(lat.datum().clone());
        checks.push(CrossCheck::equality(
            &format!("ell HSpin_{}", 4 * n),
            qform::ell_closed_form_halfspin(n)?,
            qform::ell_of_lattice(&form, &lat)?,
        ));
    }
    Ok(checks)
}

fn suite_ng(max_n: u64, height: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for (p, r) in GRID {
        let m = p.pow(r);
        let mut n = m;
        while n <= max_n.min(GRID_MAX_N) {
            let spec = GroupSpec::sl_mod_mu(n, m)?;
            let bounds = DynkinBounds::for_group(&spec).expect("sl bounds");
            let ng = repth::n_g_bruteforce(spec.rep_lattice(), height, Some(&bounds))?;
            checks.push(CrossCheck::equality(
                &format!("n_g SL_{n}/mu_{m} (height {height})"),
                repth::n_closed_form_sl(n, p, r)?,
                ng.value,
            ));
            n += m;
        }
    }
    // distinguished values pinned directly
    let pgl2 = GroupSpec::sl_mod_mu(2, 2)?;
    let bounds = DynkinBounds::for_group(&pgl2).expect("bounds");
    let ng = repth::n_g_bruteforce(pgl2.rep_lattice(), 6, Some(&bounds))?;
    checks.push(CrossCheck::equality("n_g PGL_2 (height 6)", 4u64, ng.value));
    for (n, m, expected) in [(4u64, 2u64, 2u64), (8, 2, 2), (9, 3, 3), (6, 2, 4)] {
        let spec = GroupSpec::sl_mod_mu(n, m)?;
        let bounds = DynkinBounds::for_group(&spec).expect("bounds");
        let ng = repth::n_g_bruteforce(spec.rep_lattice(), 4, Some(&bounds))?;
        checks.push(CrossCheck::equality(
            &format!("n_g SL_{n}/mu_{m} pinned"),
            expected,
            ng.value,
        ));
    }
    for (n, expected) in [(2u64, 2u64), (3, 4), (4, 4)] {
        let spec = GroupSpec::half_spin(n)?;
        let bounds = DynkinBounds::for_group(&spec).expect("bounds");
        let ng = repth::n_g_bruteforce(spec.rep_lattice(), 3, Some(&bounds))?;
        checks.push(CrossCheck::equality(
            &format!("n_g HSpin_{} (height 3)", 4 * n),
            expected,
            ng.value,
        ));
        checks.push(CrossCheck::equality(
            &format!("n_g HSpin_{} closed form", 4 * n),
            expected,
            repth::n_closed_form_halfspin(n)?,
        ));
    }
    Ok(checks)
}

fn suite_type_a(max_n: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    // factorial formula vs the Weyl-orbit index on every dominant
    // character of height <= 4 (the two index routes for type-A characters)
    for n in 3..=8u64 {
        let datum = rootsys::datum(Family::A, (n - 1) as usize)?;
        let wl = CharLattice::weight_lattice(datum.clone());
        let mut failures = Vec::new();
        let chars = repth::enumerate_dominant(&wl, 4)?;
        let total = chars.len();
        for chi in &chars {
            let c = repth::ebar_coords_type_a(n, chi.fw_coords())?;
            let lhs = repth::n_chi_type_a(n, &c)?;
            let rhs = repth::orbit_index(&datum, chi)?;
            if lhs != rhs {
                failures.push(format!("fw {:?}: {lhs} != {rhs}", chi.fw_coords()));
            }
        }
        checks.push(aggregate(
            format!("index formulas agree on A_{} (height 4)", n - 1),
            total,
            failures,
        ));
    }
    // on the exterior powers (minuscule) the irreducible index agrees too
    for n in 3..=8u64 {
        let datum = rootsys::datum(Family::A, (n - 1) as usize)?;
        let wl = CharLattice::weight_lattice(datum.clone());
        let mut failures = Vec::new();
        let mut total = 0usize;
        for m in 1..n as usize {
            let mut fw = vec![0i64; (n - 1) as usize];
            fw[m - 1] = 1;
            let chi = repth::DominantCharacter::from_fw_coords(&wl, &fw)?;
            total += 1;
            let expected = arith::binomial(n - 2, m as u64 - 1);
            if repth::dynkin_index(&datum, &chi)? != expected
                || repth::orbit_index(&datum, &chi)? != expected
            {
                failures.push(format!("exterior power m={m}"));
            }
        }
        checks.push(aggregate(
            format!("exterior-power indices on A_{}", n - 1),
            total,
            failures,
        ));
    }
    // exterior powers and the c_1 = m witness
    for n in 2..=max_n {
        let mut failures = Vec::new();
        let mut total = 0usize;
        for m in 1..n {
            let mut c = vec![0i64; n as usize];
            for x in c.iter_mut().take(m as usize) {
                *x = 1;
            }
            total += 1;
            if repth::n_chi_type_a(n, &c)? != arith::binomial(n - 2, m - 1) {
                failures.push(format!("exterior power m={m}"));
            }
        }
        for m in 1..=n {
            let mut c = vec![0i64; n as usize];
            c[0] = m as i64;
            total += 1;
            if repth::n_chi_type_a(n, &c)? != BigInt::from(m * m) {
                failures.push(format!("c_1 = {m}"));
            }
        }
        checks.push(aggregate(format!("index witnesses on A_{}", n - 1), total, failures));
    }
    Ok(checks)
}

fn suite_half_spin_index() -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for n in [2u64, 3, 4] {
        let rank = (2 * n) as usize;
        let datum = rootsys::datum(Family::D, rank)?;
        let wl = CharLattice::weight_lattice(datum.clone());
        let expected = BigInt::from(2u64.pow(2 * n as u32 - 3));
        for node in [rank - 1, rank] {
            let mut fw = vec![0i64; rank];
            fw[node - 1] = 1;
            let chi = repth::DominantCharacter::from_fw_coords(&wl, &fw)?;
            checks.push(CrossCheck::equality(
                &format!("half-spin index D_{rank} node {node}"),
                &expected,
                repth::dynkin_index(&datum, &chi)?,
            ));
        }
    }
    Ok(checks)
}

fn suite_tables(max_n: u64, height: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for (p, r) in GRID {
        let m = p.pow(r);
        let ns: Vec<u64> = (1..)
            .map(|k| k * m)
            .take_while(|&n| n <= max_n.min(GRID_MAX_N))
            .filter(|&n| n >= 2)
            .collect();
        if ns.is_empty() {
            continue;
        }
        for row in invariants::theorem_table_sl(p, r, &ns, height)? {
            checks.push(CrossCheck {
                name: format!("InvSL case {} (p={p}, r={r})", row.group),
                closed_form: row.case_label.clone(),
                oracle: row.report.inv_ind_presentation.clone(),
                pass: row.pass,
            });
        }
    }
    let ns: Vec<u64> = (2..=8).collect();
    for row in invariants::theorem_table_halfspin(&ns, height)? {
        let engine_label = if row.report.inv_ind_order == 1 {
            "0".to_string()
        } else if row.report.ell == 1 {
            format!("Z/{}Z", row.report.n_g)
        } else {
            format!("{}Z/{}Z", row.report.ell, row.report.n_g)
        };
        checks.push(CrossCheck {
            name: format!("InvHSpin case {}", row.group),
            closed_form: row.case_label.clone(),
            oracle: engine_label,
            pass: row.pass,
        });
    }
    // closed-form-only consistency out to n = 32: the theorem case order
    // must equal n_G / ell from the two closed forms, with no enumeration
    for (p, r) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2)] {
        let m = p.pow(r);
        let mut failures = Vec::new();
        let mut total = 0usize;
        let mut n = m.max(2);
        while n <= 32 {
            let s = arith::padic_valuation(n, p);
            let theorem_order = if p == 2 {
                if s > 2 * r {
                    m
                } else if s > r + 1 {
                    p.pow(s - r - 1)
                } else {
                    1
                }
            } else if s >= 2 * r {
                m
            } else if s > r {
                p.pow(s - r)
            } else {
                1
            };
            let quotient = repth::n_closed_form_sl(n, p, r)? / qform::ell_closed_form_sl(n, m)?;
            total += 1;
            if theorem_order != quotient {
                failures.push(format!("n={n}: case order {theorem_order} != {quotient}"));
            }
            n += m;
        }
        checks.push(aggregate(
            format!("InvSL case orders vs closed-form quotients (p={p}, r={r}, n<=32)"),
            total,
            failures,
        ));
    }
    let expected = [
        ("SL_8/μ_2", "F^×/F^{×2} ⊕ Z/2Z"),
        ("SL_9/μ_3", "F^×/F^{×3} ⊕ Z/3Z"),
        ("HSpin_16", "F^×/F^{×2} ⊕ Z/4Z"),
    ];
    let got = invariants::split_cases()?;
    let closed = expected
        .iter()
        .map(|(g, s)| format!("{g}: {s}"))
        .collect::<Vec<_>>()
        .join("; ");
    let oracle = got
        .iter()
        .map(|(g, s)| format!("{g}: {s}"))
        .collect::<Vec<_>>()
        .join("; ");
    checks.push(CrossCheck::equality("split cases", closed, oracle));
    Ok(checks)
}

fn suite_restrict() -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    for n in 2..=8u64 {
        let emb = restrict::embed_a_in_d(n)?;
        checks.push(CrossCheck::equality(
            &format!("rost multiplier A_{} in D_{}", 2 * n - 1, 2 * n),
            1u64,
            restrict::rost_multiplier(&emb)?,
        ));
    }
    let expected = [
        (2u64, (1u64, 1u64, 0u64)),
        (3, (1, 1, 0)),
        (4, (4, 2, 1)),
        (5, (1, 1, 0)),
        (6, (2, 1, 0)),
        (7, (1, 1, 0)),
        (8, (4, 2, 1)),
    ];
    for (n, (source_order, target_order, image)) in expected {
        let source = GroupSpec::half_spin(n)?;
        let target = GroupSpec::sl_mod_mu(2 * n, 2)?;
        let desc = restrict::induced_quotient_map(&source, &target)?;
        checks.push(CrossCheck::equality(
            &format!("restriction HSpin_{} -> SL_{}/mu_2", 4 * n, 2 * n),
            format!("Z/{source_order} -> Z/{target_order}, 1 -> {image}"),
            format!(
                "Z/{} -> Z/{}, 1 -> {}",
                desc.source_order, desc.target_order, desc.image_of_generator
            ),
        ));
    }
    Ok(checks)
}

fn random_rational_vector(rng: &mut ChaCha8Rng, rank: usize) -> Vec<Rat> {
    (0..rank)
        .map(|_| {
            let numer: i64 = rng.random_range(-12..=12);
            let denom: i64 = rng.random_range(1..=9);
            Rat::new(numer.into(), denom.into())
        })
        .collect()
}

fn suite_props(max_n: u64, height: u64) -> Result<Vec<CrossCheck>> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x51dec);

    // Weyl invariance of q on 50 random rational vectors per datum
    let mut datums = Vec::new();
    for rank in 1..=8usize {
        datums.push(rootsys::datum(Family::A, rank)?);
    }
    for rank in 3..=8usize {
        datums.push(rootsys::datum(Family::D, rank)?);
    }
    for datum in &datums {
        let form = InvariantForm::new(datum.clone());
        let mut failures = Vec::new();
        for trial in 0..50 {
            let x = random_rational_vector(&mut rng, datum.rank());
            let qx = form.q_eval(&x)?;
            for i in 1..=datum.rank() {
                let sx = simple_reflection(datum, i, &x)?;
                if form.q_eval(&sx)? != qx {
                    failures.push(format!("trial {trial}, reflection {i}"));
                }
            }
        }
        checks.push(aggregate(
            format!("W-invariance of q on {}_{}", datum.family(), datum.rank()),
            50,
            failures,
        ));
    }

    // ell | n_G and the divisor bounds for every constructed spec
    let mut specs = Vec::new();
    for n in 2..=max_n.min(16) {
        for m in divisors(n) {
            specs.push(GroupSpec::sl_mod_mu(n, m)?);
        }
    }
    for n in 2..=8u64 {
        specs.push(GroupSpec::half_spin(n)?);
    }
    let mut ell_failures = Vec::new();
    let mut bound_failures = Vec::new();
    let total = specs.len();
    for spec in &specs {
        let rep = invariants::report(spec, height, false)?;
        if rep.n_g % rep.ell != 0 {
            ell_failures.push(format!("{}: ell = {}, n_G = {}", spec.name(), rep.ell, rep.n_g));
        }
        let bounds = DynkinBounds::for_group(spec).expect("family bounds");
        if rep.n_g % bounds.lower != 0 || !bounds.upper.is_multiple_of(rep.n_g) {
            bound_failures.push(format!(
                "{}: {} | {} | {} violated",
                spec.name(),
                bounds.lower,
                rep.n_g,
                bounds.upper
            ));
        }
    }
    checks.push(aggregate("ell divides n_G".into(), total, ell_failures));
    checks.push(aggregate("divisor bounds on n_G".into(), total, bound_failures));

    // sandwich: gcd over the weight lattice divides the group gcd divides
    // the root-lattice gcd, at equal height
    let mut sandwich_failures = Vec::new();
    let mut sandwich_total = 0usize;
    let mut sandwich_specs = Vec::new();
    for n in 3..=8u64 {
        for m in divisors(n) {
            sandwich_specs.push(GroupSpec::sl_mod_mu(n, m)?);
        }
    }
    for n in 2..=3u64 {
        sandwich_specs.push(GroupSpec::half_spin(n)?);
    }
    for spec in &sandwich_specs {
        let datum = spec.datum().clone();
        let weight = CharLattice::weight_lattice(datum.clone());
        let root = CharLattice::root_lattice(datum);
        let h = 3;
        let sc = repth::n_g_bruteforce(&weight, h, None)?.enumeration_gcd;
        let mid = repth::n_g_bruteforce(spec.rep_lattice(), h, None)?.enumeration_gcd;
        let adj = repth::n_g_bruteforce(&root, h, None)?.enumeration_gcd;
        sandwich_total += 1;
        if mid % sc != 0 || adj % mid != 0 {
            sandwich_failures.push(format!("{}: {sc} | {mid} | {adj} violated", spec.name()));
        }
    }
    checks.push(aggregate(
        "simply-connected | group | adjoint index gcd chain".into(),
        sandwich_total,
        sandwich_failures,
    ));

    // Kummer valuations against Legendre factorial valuations
    for p in [2u64, 3, 5] {
        let mut failures = Vec::new();
        let mut total = 0usize;
        for n in 2..=64u64 {
            let s = arith::padic_valuation(n, p);
            for r in 1..=s {
                total += 1;
                let direct = arith::binomial_valuation(n, p.pow(r), p)?;
                if u64::from(repth::ord_p_binom(n, p, r)?) != direct {
                    failures.push(format!("n={n}, r={r}"));
                }
            }
        }
        checks.push(aggregate(format!("Kummer valuation p={p}"), total, failures));
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite, max_n: u64, height: u64) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::QTau => suite_q_tau(max_n)?,
        Suite::Ell => suite_ell(max_n)?,
        Suite::Ng => suite_ng(max_n, height)?,
        Suite::TypeA => suite_type_a(max_n)?,
        Suite::HalfSpinIndex => suite_half_spin_index()?,
        Suite::Tables => suite_tables(max_n, height)?,
        Suite::Restrict => suite_restrict()?,
        Suite::Props => suite_props(max_n, height)?,
    };
    Ok(SuiteReport { suite: suite.name(), checks })
}

pub fn run_all(max_n: u64, height: u64) -> Result<Vec<SuiteReport>> {
    Suite::all()
        .into_iter()
        .map(|s| run_suite(s, max_n, height))
        .collect()
}
