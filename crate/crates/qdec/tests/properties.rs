//! Property tests for the algebraic invariants: reflection involutivity,
//! Weyl invariance of the form, lattice membership structure, canonical
//! bases, and the two independent membership routes behind enumeration.

use num_bigint::BigInt;
use proptest::prelude::*;

use qdec::arith::binomial_valuation;
use qdec::{
    build_root_datum, enumerate_dominant, lattice_sl_mod_mu, ord_p_binom, simple_reflection,
    CharLattice, Family, InvariantForm, Rat,
};

#[test]
fn core_types_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<qdec::RootDatum>();
    assert_send_sync::<CharLattice>();
    assert_send_sync::<qdec::GroupSpec>();
    assert_send_sync::<InvariantForm>();
    assert_send_sync::<qdec::DominantCharacter>();
    assert_send_sync::<qdec::InvariantReport>();
}

fn datum_strategy() -> impl Strategy<Value = std::sync::Arc<qdec::RootDatum>> {
    let choices: Vec<(Family, usize)> = vec![
        (Family::A, 1),
        (Family::A, 2),
        (Family::A, 4),
        (Family::A, 6),
        (Family::D, 3),
        (Family::D, 4),
        (Family::D, 6),
    ];
    (0..choices.len()).prop_map(move |i| {
        let (f, r) = choices[i];
        std::sync::Arc::new(build_root_datum(f, r).unwrap())
    })
}

fn rational_vector(rank: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec((-20i64..=20, 1i64..=9), rank)
        .prop_map(|v| v.into_iter().map(|(n, d)| Rat::new(n.into(), d.into())).collect())
}

fn sl_params() -> impl Strategy<Value = (u64, u64)> {
    (2u64..=16).prop_flat_map(|n| {
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        (0..divisors.len()).prop_map(move |i| (n, divisors[i]))
    })
}

fn datum_and_vector() -> impl Strategy<Value = (std::sync::Arc<qdec::RootDatum>, Vec<Rat>)> {
    datum_strategy().prop_flat_map(|d| {
        let rank = d.rank();
        (Just(d), rational_vector(rank))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions_and_preserve_q((datum, x) in datum_and_vector()) {
        let rank = datum.rank();
        let form = InvariantForm::new(datum.clone());
        let qx = form.q_eval(&x).unwrap();
        for i in 1..=rank {
            let once = simple_reflection(&datum, i, &x).unwrap();
            let twice = simple_reflection(&datum, i, &once).unwrap();
            prop_assert_eq!(&twice, &x);
            prop_assert_eq!(form.q_eval(&once).unwrap(), qx.clone());
        }
    }

    #[test]
    fn lattice_membership_is_closed_under_the_group_operations(
        (n, m) in sl_params(),
        coeffs in proptest::collection::vec(-4i64..=4, 1..30),
    ) {
        let lat = lattice_sl_mod_mu(n, m).unwrap();
        let rank = (n - 1) as usize;
        // integer combination of basis vectors
        let mut x = vec![Rat::new(0.into(), 1.into()); rank];
        for (k, b) in coeffs.iter().zip(lat.basis()) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * Rat::from_integer((*k).into());
            }
        }
        prop_assert!(lat.contains(&x).unwrap());
        let neg: Vec<Rat> = x.iter().map(|v| -v.clone()).collect();
        prop_assert!(lat.contains(&neg).unwrap());
        // tau/2 is never a member: its first coordinate 1/(2m) cannot be
        // shifted into Z by integer multiples of 1/m
        let half_tau: Vec<Rat> = lat
            .tau()
            .unwrap()
            .iter()
            .map(|v| v / Rat::from_integer(2.into()))
            .collect();
        prop_assert!(!lat.contains(&half_tau).unwrap());
        let shifted: Vec<Rat> = x.iter().zip(&half_tau).map(|(a, b)| a + b).collect();
        prop_assert!(!lat.contains(&shifted).unwrap());
    }

    #[test]
    fn hermite_basis_is_canonical_under_redundant_generators(
        (n, m) in sl_params(),
        extra in proptest::collection::vec(-3i64..=3, 1..20),
    ) {
        let lat = lattice_sl_mod_mu(n, m).unwrap();
        let rank = (n - 1) as usize;
        let mut gens: Vec<Vec<Rat>> = lat.basis().to_vec();
        // adjoin a redundant generator: an integer combination of the basis
        let mut x = vec![Rat::new(0.into(), 1.into()); rank];
        for (k, b) in extra.iter().zip(lat.basis()) {
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += bi * Rat::from_integer((*k).into());
            }
        }
        gens.push(x);
        gens.reverse();
        let rebuilt = CharLattice::from_generators(lat.datum().clone(), &gens, None).unwrap();
        prop_assert!(rebuilt.same_lattice(&lat));
        prop_assert_eq!(rebuilt.basis(), lat.basis());
    }

    #[test]
    fn index_multiplicativity((n, m) in sl_params()) {
        let lat = lattice_sl_mod_mu(n, m).unwrap();
        prop_assert_eq!(
            lat.index_in_weight_lattice() * lat.index_over_root_lattice(),
            lat.datum().det_cartan()
        );
        prop_assert_eq!(lat.index_over_root_lattice(), m);
    }

    #[test]
    fn enumeration_agrees_with_direct_membership((n, m) in sl_params()) {
        // two independent membership routes: the Smith-form congruence
        // filter inside enumerate_dominant vs the Hermite solve in contains
        let lat = lattice_sl_mod_mu(n, m).unwrap();
        let rep = lat.dual_in_weight_lattice().unwrap();
        let height = 3u64;
        let chars = enumerate_dominant(&rep, height).unwrap();
        for chi in &chars {
            prop_assert!(rep.contains(chi.weight()).unwrap());
            prop_assert!(chi.height() >= 1 && chi.height() <= height);
        }
        let mut fws: Vec<Vec<u64>> = chars.iter().map(|c| c.fw_coords().to_vec()).collect();
        let sorted = {
            let mut s = fws.clone();
            s.sort();
            s
        };
        prop_assert_eq!(&fws, &sorted);
        fws.dedup();
        prop_assert_eq!(fws.len(), chars.len());
    }

    #[test]
    fn kummer_matches_legendre(n in 1u64..=128, p_idx in 0usize..3) {
        let p = [2u64, 3, 5][p_idx];
        let mut q = p;
        let mut r = 1u32;
        while n % q == 0 {
            let direct = binomial_valuation(n, q, p).unwrap();
            prop_assert_eq!(u64::from(ord_p_binom(n, p, r).unwrap()), direct);
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            r += 1;
        }
    }

    #[test]
    fn orbit_index_divides_into_gcd_structure((n, m) in sl_params()) {
        // every enumerated index is a positive multiple of the closed-form
        // n_G when m is a prime power
        let factors = qdec::arith::prime_factors(m);
        if m > 1 && factors.len() == 1 {
            let (p, r) = factors[0];
            let closed = qdec::n_closed_form_sl(n, p, r).unwrap();
            let spec = qdec::GroupSpec::sl_mod_mu(n, m).unwrap();
            let chars = enumerate_dominant(spec.rep_lattice(), 3).unwrap();
            for chi in &chars {
                let index = qdec::dynkin_index(spec.datum(), chi).unwrap();
                prop_assert_eq!(&index % BigInt::from(closed), BigInt::from(0));
                prop_assert!(index > BigInt::from(0));
            }
        }
    }
}
