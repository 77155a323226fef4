use proptest::prelude::*;
use rrcc_core::cosets::cyclotomic_cosets;
use rrcc_core::cycliccode::{exponents_of, is_subcode, CodeFamily, RepeatedRootCode};
use rrcc_core::polyring::Poly;
use rrcc_core::unityfactor::factor_unity;
use rrcc_core::wtdist::distance;
use rrcc_core::FieldSpec;

const FIELDS: &[(u64, u32)] = &[(3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (3, 2), (5, 2)];

fn family(p: u64, m: u32, r: u32) -> CodeFamily {
    CodeFamily::new(&FieldSpec::build(p, m).unwrap(), r, 1).unwrap()
}

/// A random code in a random family of length `2^r p`.
fn any_code() -> impl Strategy<Value = RepeatedRootCode> {
    (0..FIELDS.len(), 1u32..=3, any::<u64>()).prop_map(|(i, r, seed)| {
        let (p, m) = FIELDS[i];
        let fam = family(p, m, r);
        let mut x = seed;
        let exps = (0..fam.reps().len())
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 33) % (fam.ps() + 1)
            })
            .collect();
        fam.code(exps).unwrap()
    })
}

fn poly(f: &FieldSpec, coeffs: &[u32]) -> Poly {
    Poly::new(f, coeffs.iter().map(|&c| f.element(c as u64 % f.q()).unwrap()).collect())
}

/// Least nonzero weight over all `m(x) g(x)` with `deg m < k`.
fn listed_distance(c: &RepeatedRootCode) -> u64 {
    let f = c.family().field();
    let (n, k, q) = (c.n() as usize, c.k() as usize, f.q());
    let mut best = n as u64;
    let mut digits = vec![0u64; k];
    loop {
        let mut i = 0;
        while i < k && digits[i] == q - 1 {
            digits[i] = 0;
            i += 1;
        }
        if i == k {
            return best;
        }
        digits[i] += 1;
        let msg = Poly::new(f, digits.iter().map(|&d| f.element(d).unwrap()).collect());
        let word = &msg * c.generator();
        best = best.min((0..n).filter(|&j| !word.coeff(j).is_zero()).count() as u64);
    }
}

proptest! {
    #[test]
    fn field_axioms(i in 0..FIELDS.len(), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::build(p, m).unwrap();
        let [a, b, c] = [a, b, c].map(|v| f.element(v as u64 % f.q()).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, f.q() - 1), f.one());
        }
    }

    #[test]
    fn division_with_remainder(
        i in 0..FIELDS.len(),
        a in prop::collection::vec(any::<u32>(), 0..12),
        b in prop::collection::vec(any::<u32>(), 1..6),
    ) {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::build(p, m).unwrap();
        let (a, b) = (poly(&f, &a), poly(&f, &b));
        prop_assume!(!b.is_zero());
        let (quot, rem) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&quot * &b) + &rem, a);
        prop_assert!(rem.is_zero() || rem.degree() < b.degree());
    }

    #[test]
    fn rendered_polynomials_parse_back(i in 0..FIELDS.len(), a in prop::collection::vec(any::<u32>(), 0..10)) {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::build(p, m).unwrap();
        let a = poly(&f, &a);
        prop_assert_eq!(Poly::parse(&f, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn unity_factors_multiply_out(i in 0..FIELDS.len(), r in 1u32..=5) {
        let (p, m) = FIELDS[i];
        let f = FieldSpec::build(p, m).unwrap();
        let factors = factor_unity(&f, r).unwrap();
        let product = factors.iter().fold(Poly::one(&f), |acc, (_, m)| &acc * m);
        prop_assert_eq!(product, Poly::x_n_minus_one(&f, 1 << r));
        prop_assert!(factors.iter().all(|(_, m)| m.is_monic() && m.is_irreducible()));
        prop_assert_eq!(factors.len(), cyclotomic_cosets(1 << r, f.q()).reps().len());
    }

    #[test]
    fn generator_divides_and_determines_the_code(c in any_code()) {
        let f = c.family().field();
        let g = c.generator();
        prop_assert!(g.divides(&Poly::x_n_minus_one(f, c.n() as usize)).unwrap());
        prop_assert_eq!(g.degree().unwrap() as u64, c.n() - c.k());
        prop_assert_eq!(exponents_of(c.family(), g).unwrap().0, c.exps().to_vec());
    }

    #[test]
    fn dual_is_an_involution(c in any_code()) {
        let d = c.dual();
        prop_assert_eq!(d.k(), c.n() - c.k());
        prop_assert_eq!(&d.dual(), &c);
        prop_assert_eq!(d, c.dual_generic().unwrap());
    }

    #[test]
    fn hull_is_shared_with_the_dual(c in any_code()) {
        let h = c.hull();
        prop_assert_eq!(&h, &c.dual().hull());
        prop_assert_eq!(&h, &c.hull_via_lcm().unwrap());
        prop_assert!(is_subcode(&h, &c).unwrap());
        prop_assert!(is_subcode(&h, &c.dual()).unwrap());
    }

    #[test]
    fn dual_containment_tests_agree(c in any_code()) {
        let by_exps = c.is_dual_containing();
        prop_assert_eq!(by_exps, c.dual_containing_by_divisibility().unwrap());
        prop_assert_eq!(by_exps, is_subcode(&c.dual(), &c).unwrap());
        prop_assert_eq!(by_exps, c.hull() == c.dual());
    }

    #[test]
    fn distance_matches_listing_and_singleton(c in any_code()) {
        prop_assume!(!c.is_zero_code());
        let d = distance(&c).unwrap().d;
        prop_assert!(d >= 1 && d <= c.n() - c.k() + 1);
        if (c.family().field().q() as f64).powi(c.k() as i32) <= 2e5 {
            prop_assert_eq!(d, listed_distance(&c));
        }
    }
}
