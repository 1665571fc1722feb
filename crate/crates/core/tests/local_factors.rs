use num_bigint::BigInt;
use proptest::prelude::*;
use satake::char_ring::{decompose, tensor_chars, irreducible_char, IrredDecomp};
use satake::local_factors::{local_factor, sym_power_matrix, HeckeLocal, LocalFactorPoly};
use satake::scalar::{Coeff, Surd};

const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Exact Hecke data of weight 12 at `p` with `|a| <= 2 p^(11/2)`.
fn hecke() -> impl Strategy<Value = HeckeLocal<Surd>> {
    (0usize..PRIMES.len(), -1.0f64..1.0).prop_map(|(i, t)| {
        let p = PRIMES[i];
        let bound = 2.0 * (p as f64).powf(5.5);
        let a = BigInt::from((t * bound) as i64);
        HeckeLocal::exact(p, &a, &BigInt::from(p).pow(11)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn factor_of_sum_is_product(h in hecke(), j1 in 0u32..4, j2 in 0u32..4) {
        let d = decompose(&tensor_chars(&irreducible_char(j1, 0, 1).unwrap(), &irreducible_char(j2, 0, 1).unwrap()).unwrap()).unwrap();
        let whole = local_factor(&h, &d).unwrap();
        let mut prod = LocalFactorPoly::one(h.p);
        for part in d.parts() {
            let single = IrredDecomp::single(part.first.j, part.first.k);
            prod = prod.mul(&local_factor(&h, &single).unwrap());
        }
        prop_assert_eq!(whole.trimmed(), prod.trimmed());
    }

    #[test]
    fn newton_round_trip(h in hecke(), j in 1u32..6) {
        let f = local_factor(&h, &IrredDecomp::single(j, 0)).unwrap();
        let back = LocalFactorPoly::from_power_sums(h.p, &f.power_sums(f.degree()), f.degree());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn unitary_symmetric_powers_are_self_reciprocal(h in hecke(), j in 1u32..7) {
        let u = h.unitary().unwrap();
        let f = local_factor(&u, &IrredDecomp::single(j, 0)).unwrap();
        prop_assert!(f.is_self_reciprocal());
    }

    #[test]
    fn sym_power_trace_matches_factor(h in hecke(), j in 1usize..5) {
        // the X coefficient is minus the trace of sym^j of the companion matrix
        let m = sym_power_matrix(&h.companion(), j);
        let trace = (0..=j).fold(Surd::from_bigint(&BigInt::from(0)), |acc, i| acc + m[i][i].clone());
        let f = local_factor(&h, &IrredDecomp::single(j as u32, 0)).unwrap();
        prop_assert_eq!(f.coeffs[1].clone(), -trace);
    }
}

#[test]
fn ramanujan_sym2_at_two() {
    // tau(2) = -24, so the linear coefficient is -(tau(2)^2 - 2^11) = 1472
    let h = HeckeLocal::exact(2, &BigInt::from(-24), &BigInt::from(2048)).unwrap();
    let f = local_factor(&h, &IrredDecomp::single(2, 0)).unwrap();
    assert_eq!(f.coeffs[1].to_string(), "1472");
    assert_eq!(f.degree(), 3);
}
