use proptest::prelude::*;
use satake::char_ring::{
    decompose, external_product, irreducible_char, plethysm, tensor_chars, IrredDecomp, IrredPart,
    Irrep, Plethysm,
};

fn one_factor(parts: &[(u32, i32)]) -> IrredDecomp {
    IrredDecomp::from_parts(
        1,
        parts.iter().map(|&(j, k)| IrredPart {
            first: Irrep::new(j, k),
            second: None,
            mult: 1,
        }),
    )
    .unwrap()
}

fn sym(j: u32, k: i32) -> satake::char_ring::CharPoly {
    irreducible_char(j, k, 1).unwrap()
}

#[test]
fn clebsch_gordan_up_to_eight() {
    for j1 in 0..=8u32 {
        for j2 in 0..=j1 {
            let got = decompose(&tensor_chars(&sym(j1, 0), &sym(j2, 0)).unwrap()).unwrap();
            let want: Vec<(u32, i32)> = (0..=j2).map(|i| (j1 + j2 - 2 * i, i as i32)).collect();
            assert_eq!(got, one_factor(&want), "sym{j1} x sym{j2}");
        }
    }
}

#[test]
fn named_plethysms() {
    let p = |j, kind| decompose(&plethysm(&sym(j, 0), kind).unwrap()).unwrap();
    assert_eq!(p(3, Plethysm::Sym2), one_factor(&[(6, 0), (2, 2)]));
    assert_eq!(p(4, Plethysm::Sym2), one_factor(&[(8, 0), (4, 2), (0, 4)]));
    assert_eq!(p(4, Plethysm::Alt2), one_factor(&[(6, 1), (2, 3)]));
}

proptest! {
    #[test]
    fn tensor_dimension_and_twist(j1 in 0u32..10, j2 in 0u32..10, k1 in -3i32..4, k2 in -3i32..4) {
        let t = tensor_chars(&sym(j1, k1), &sym(j2, k2)).unwrap();
        let d = decompose(&t).unwrap();
        prop_assert_eq!(d.dim(), ((j1 + 1) * (j2 + 1)) as u64);
        prop_assert_eq!(d.to_char(), t);
        for part in d.parts() {
            // central characters add: det^k contributes 2k to the total weight
            prop_assert_eq!(part.first.weight(), (j1 as i64 + 2 * k1 as i64) + (j2 as i64 + 2 * k2 as i64));
        }
    }

    #[test]
    fn sym2_plus_alt2_is_the_square(j in 0u32..9, k in -2i32..3) {
        let x = sym(j, k);
        let s = plethysm(&x, Plethysm::Sym2).unwrap();
        let a = plethysm(&x, Plethysm::Alt2).unwrap();
        prop_assert_eq!(s.plus(&a), tensor_chars(&x, &x).unwrap());
        let n = (j + 1) as i64;
        prop_assert_eq!(s.dim(), n * (n + 1) / 2);
        prop_assert_eq!(a.dim(), n * (n - 1) / 2);
    }

    #[test]
    fn dual_is_an_involution(j1 in 0u32..6, j2 in 0u32..6, k in -3i32..4) {
        let x = external_product(&sym(j1, k), &sym(j2, -k)).unwrap();
        prop_assert_eq!(x.dual().dual(), x.clone());
        prop_assert_eq!(decompose(&x).unwrap().to_char(), x);
    }
}
