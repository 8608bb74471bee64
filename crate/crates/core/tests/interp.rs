mod common;

use common::{element, nonzero_scalar, p, poly, rng, scalar};
use freelie::eqn::kernel::psi_auxiliaries_by_elimination;
use freelie::interp::*;
use freelie::{Field, FreeLie, Polynomial, Scalar};
use rand::Rng;

const Q: Field = Field::Rationals;

fn lie() -> FreeLie {
    FreeLie::new(3, Q).unwrap()
}

#[test]
fn psi_witnesses_for_random_inputs() {
    let lie = lie();
    let mut r = rng(11);
    for _ in 0..25 {
        let f = poly(Q, &mut r, 4);
        let (al, be) = (scalar(Q, &mut r), scalar(Q, &mut r));
        let w = psi_witness(&lie, &f, &al, &be).unwrap();
        assert!(check_phi(&lie, &w.x, &w.y, &w.z, &w.z1, &w.z2).unwrap(), "f = {f}");
        assert_eq!(decode_poly(&lie, &w.x).unwrap(), (f.clone(), al));
    }
}

#[test]
fn elimination_route_agrees_with_witnesses() {
    let lie = lie();
    let mut r = rng(12);
    for _ in 0..6 {
        let f = poly(Q, &mut r, 2);
        let w = psi_witness(&lie, &f, &scalar(Q, &mut r), &scalar(Q, &mut r)).unwrap();
        let d = w.x.degree().max(w.y.degree()).max(1);
        let (z, z1, z2) = psi_auxiliaries_by_elimination(&lie, &w.x, &w.y, d).unwrap().expect("solvable");
        assert!(check_phi(&lie, &w.x, &w.y, &z, &z1, &z2).unwrap());
        // auxiliaries are unique up to the centralizer of a
        for (mine, theirs) in [(&w.z, &z), (&w.z1, &z1), (&w.z2, &z2)] {
            assert!(equiv(&lie, mine, theirs).unwrap());
        }
    }
}

#[test]
fn pairs_outside_the_code_set_have_no_auxiliaries() {
    let lie = lie();
    let x = encode_poly(&lie, &p(Q, "t"), &Scalar::zero(Q)).unwrap().element;
    let y = even_action(&lie, freelie::Generator::C, &p(Q, "t^2")).unwrap();
    assert!(psi_auxiliaries_by_elimination(&lie, &x, &y, 5).unwrap().is_none());
    let odd = lie.ad_power(&lie.b(), freelie::Generator::A, 1).unwrap();
    let odd_c = lie.ad_power(&lie.c(), freelie::Generator::A, 1).unwrap();
    assert!(psi_auxiliaries_by_elimination(&lie, &odd, &odd_c, 3).unwrap().is_none());
}

#[test]
fn equivalence_is_a_congruence_for_addition() {
    let lie = lie();
    let mut r = rng(13);
    for _ in 0..30 {
        let f = poly(Q, &mut r, 3);
        let g = poly(Q, &mut r, 3);
        let u = encode_poly(&lie, &f, &scalar(Q, &mut r)).unwrap().element;
        let u2 = &u + &lie.a().scale(&scalar(Q, &mut r)).unwrap();
        let v = encode_poly(&lie, &g, &scalar(Q, &mut r)).unwrap().element;
        let v2 = &v + &lie.a().scale(&scalar(Q, &mut r)).unwrap();
        assert!(equiv(&lie, &u, &u).unwrap());
        assert!(equiv(&lie, &u, &u2).unwrap() && equiv(&lie, &u2, &u).unwrap());
        assert!(equiv(&lie, &(&u + &v), &(&u2 + &v2)).unwrap());
        assert_eq!(equiv(&lie, &u, &v).unwrap(), f == g);
    }
}

#[test]
fn decode_respects_oplus() {
    let lie = lie();
    let mut r = rng(14);
    for _ in 0..30 {
        let (f, g) = (poly(Q, &mut r, 4), poly(Q, &mut r, 4));
        let (al, be) = (scalar(Q, &mut r), scalar(Q, &mut r));
        let u = encode_poly(&lie, &f, &al).unwrap();
        let v = encode_poly(&lie, &g, &be).unwrap();
        let w = oplus(&lie, &u, &v).unwrap();
        assert_eq!(decode_poly(&lie, &w.element).unwrap(), (f.add(&g).unwrap(), &al + &be));
        assert!(check_oplus(&lie, &u.element, &v.element, &w.element).unwrap());
        let off = encode_poly(&lie, &f.add(&g).unwrap().add(&Polynomial::one(Q)).unwrap(), &al).unwrap();
        assert!(!check_oplus(&lie, &u.element, &v.element, &off.element).unwrap());
    }
}

#[test]
fn product_congruence_matches_polynomial_multiplication() {
    let lie = lie();
    let mut r = rng(15);
    for _ in 0..12 {
        let (f, g) = (poly(Q, &mut r, 2), poly(Q, &mut r, 2));
        let fg = f.mul(&g).unwrap();
        assert!(otimes_check(&lie, &f, &g, &fg).unwrap());
        let s = product_witness(&lie, &f, &g).unwrap();
        assert_eq!(product_defect(&lie, &f, &g, &fg).unwrap(), lie.bracket(&s, &lie.a()).unwrap());
        let h = poly(Q, &mut r, 4);
        assert_eq!(otimes_check(&lie, &f, &g, &h).unwrap(), h == fg, "f = {f}, g = {g}, h = {h}");
        let u = encode_poly(&lie, &f, &Scalar::zero(Q)).unwrap();
        let v = encode_poly(&lie, &g, &Scalar::zero(Q)).unwrap();
        assert_eq!(otimes(&lie, &u, &v).unwrap().poly, fg);
    }
    // degree 4 factors
    let (f, g) = (p(Q, "t^4 - 2*t + 1"), p(Q, "1/3*t^4 + t^3"));
    let fg = f.mul(&g).unwrap();
    assert!(otimes_check(&lie, &f, &g, &fg).unwrap());
    assert!(!otimes_check(&lie, &f, &g, &fg.add(&p(Q, "t^8")).unwrap()).unwrap());
}

#[test]
fn field_checks_agree_with_decoded_arithmetic() {
    let f5 = Field::prime(5).unwrap();
    let mut r = rng(16);
    for field in [Q, f5] {
        for rank in [2, 3, 4] {
            let lie = FreeLie::new(rank, field).unwrap();
            for _ in 0..20 {
                let (x, y, z) = (scalar(field, &mut r), scalar(field, &mut r), scalar(field, &mut r));
                let enc = |s: &Scalar| encode_field(&lie, s).unwrap();
                assert_eq!(check_field_mul(&lie, &enc(&x), &enc(&y), &enc(&z)).unwrap(), &x * &y == z);
                assert_eq!(check_field_add(&lie, &enc(&x), &enc(&y), &enc(&z)).unwrap(), &x + &y == z);
                assert_eq!(decode_field(&lie, &enc(&x)).unwrap(), x);
                let u = element(&lie, &mut r, 3, 2);
                let k = nonzero_scalar(field, &mut r);
                let expected = u.scale(&x).unwrap();
                assert!(check_scalar_action(&lie, &u, &enc(&x), &expected).unwrap());
                if !u.is_zero() {
                    let wrong = u.scale(&(&x + &k)).unwrap();
                    assert!(!check_scalar_action(&lie, &u, &enc(&x), &wrong).unwrap());
                }
            }
        }
    }
}

#[test]
fn non_members_are_rejected() {
    let lie = lie();
    let bad = FieldCode {
        components: vec![lie.a(), lie.b().scale(&Scalar::from_int(Q, 2)).unwrap(), lie.c()],
    };
    let good = encode_field(&lie, &Scalar::one(Q)).unwrap();
    assert!(check_field_add(&lie, &bad, &good, &good).is_err());
    assert!(decode_field(&lie, &bad).is_err());
    let short = FieldCode { components: vec![lie.a()] };
    assert!(decode_field(&lie, &short).is_err());
    assert!(decode_poly(&lie, &lie.c()).is_err());
    assert!(decode_poly(&lie, &lie.bracket(&lie.b(), &lie.a()).unwrap()).is_err());
    let rank2 = FreeLie::new(2, Q).unwrap();
    assert!(encode_poly(&rank2, &p(Q, "t"), &Scalar::zero(Q)).is_err());
    assert!(psi_witness(&rank2, &p(Q, "t"), &Scalar::zero(Q), &Scalar::zero(Q)).is_err());
}

#[test]
fn witnesses_with_random_r() {
    let lie = lie();
    let mut r = rng(17);
    let a = lie.a();
    for _ in 0..10 {
        let x = element(&lie, &mut r, 2, 3);
        let (m, n) = (r.gen_range(0..3), r.gen_range(0..3));
        let s = witness_s(&lie, &x, m, n).unwrap();
        let lhs = lie
            .bracket(&lie.ad_power(&x, freelie::Generator::A, m).unwrap(), &lie.ad_power(&lie.b(), freelie::Generator::A, 2 * n).unwrap())
            .unwrap();
        let rhs = &lie.bracket(&lie.ad_power(&x, freelie::Generator::A, m + 2 * n).unwrap(), &lie.b()).unwrap()
            + &lie.bracket(&s, &a).unwrap();
        assert_eq!(lhs, rhs);
    }
}
