use proptest::prelude::*;

use qaskey::exactnum::qpoch;
use qaskey::multivariate::mp_schur;
use qaskey::params::{BigQJacobiParams, FamilyParams};
use qaskey::partition::enumerate_box;
use qaskey::polyseries::{alternant_quotient_by_division, Nodes, UniPoly};
use qaskey::univariate::{apply_operator, eigenvalue, phi};
use qaskey::{Partition, Scalar};

fn rational() -> impl Strategy<Value = Scalar> {
    (-30i64..=30, 1i64..=30).prop_map(|(n, d)| Scalar::frac(n, d))
}

fn nonzero() -> impl Strategy<Value = Scalar> {
    rational().prop_filter("nonzero", |x| !x.is_zero())
}

fn base_q() -> impl Strategy<Value = Scalar> {
    (2i64..=30).prop_flat_map(|d| (1..d).prop_map(move |n| Scalar::frac(n, d)))
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..7, 0..6).prop_map(Partition::from_unsorted)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pochhammer_splits(x in rational(), q in base_q(), m in 0usize..7, n in 0usize..7) {
        let right = qpoch(&x, &q, m) * qpoch(&(&x * &q.pow(m as i64)), &q, n);
        prop_assert_eq!(qpoch(&x, &q, m + n), right);
    }

    #[test]
    fn conjugation_is_an_involution(lam in partition()) {
        let c = lam.conjugate();
        prop_assert_eq!(c.size(), lam.size());
        prop_assert_eq!(c.len(), lam.first());
        prop_assert_eq!(c.conjugate(), lam);
    }

    #[test]
    fn containment_commutes_with_conjugation(a in partition(), b in partition()) {
        prop_assert_eq!(a.contains(&b), a.conjugate().contains(&b.conjugate()));
    }

    // n(λ) = Σ (i-1) λ_i against the column form Σ C(λ'_j, 2).
    #[test]
    fn n_statistic_two_ways(lam in partition()) {
        let by_columns: usize = lam.conjugate().parts().iter().map(|&c| c * c.saturating_sub(1) / 2).sum();
        prop_assert_eq!(lam.n(), by_columns);
        prop_assert_eq!(lam.conjugate().n(), lam.n_conj());
    }

    #[test]
    fn containment_is_a_partial_order(a in partition(), b in partition(), c in partition()) {
        prop_assert!(a.contains(&a));
        if a.contains(&b) && b.contains(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.contains(&b) && b.contains(&c) {
            prop_assert!(a.contains(&c));
        }
    }

    #[test]
    fn partitions_print_and_parse_back(lam in partition()) {
        prop_assert_eq!(lam.to_string().parse::<Partition>().unwrap(), lam);
    }

    #[test]
    fn scalars_print_and_parse_back(re in rational(), im in rational()) {
        let z = Scalar::complex(re.re().clone(), im.re().clone());
        prop_assert_eq!(z.to_string().parse::<Scalar>().unwrap(), z.clone());
        prop_assert_eq!(re.to_string().parse::<Scalar>().unwrap(), re);
    }

    #[test]
    fn ring_axioms(x in rational(), y in rational(), z in rational(), w in rational()) {
        let u = Scalar::complex(x.re().clone(), w.re().clone());
        prop_assert_eq!(&(&u * &y) * &z, &u * &(&y * &z));
        prop_assert_eq!(&u * &(&y + &z), &(&u * &y) + &(&u * &z));
        prop_assert_eq!(&(&u + &y) + &z, &u + &(&y + &z));
    }

    #[test]
    fn field_inverse(x in nonzero(), y in nonzero()) {
        prop_assert_eq!(&(&x * &y) * &x.inv(), y.clone());
        prop_assert_eq!((&x / &y) * &y, x);
    }

    // Two independent constructions of the multiparameter Schur polynomial.
    #[test]
    fn schur_routes_agree(raw in prop::collection::vec(nonzero(), 7), size in 0usize..4, n in 1usize..4) {
        let mut nodes = raw;
        nodes.dedup();
        prop_assume!((0..nodes.len()).all(|i| !nodes[i + 1..].contains(&nodes[i])));
        prop_assume!(nodes.len() >= n + size);
        let nodes = Nodes::explicit(nodes);
        for mu in enumerate_box(Some(n), None, size).into_iter().filter(|m| m.size() == size) {
            let rows: Vec<UniPoly> =
                (0..n).map(|i| UniPoly::newton_power(&nodes, mu.part(i) + n - 1 - i)).collect::<Result<_, _>>().unwrap();
            prop_assert_eq!(alternant_quotient_by_division(&rows).unwrap(), mp_schur(&mu, n, &nodes).unwrap());
        }
    }

    #[test]
    fn big_q_jacobi_eigenfunctions(q in base_q(), a in nonzero(), b in nonzero(), c in nonzero(), d in nonzero(), n in 0usize..6) {
        let p = BigQJacobiParams::new(q, a, b, c, d);
        prop_assume!(p.is_ok());
        let fp = FamilyParams::BigQJacobi(p.unwrap());
        let Ok(f) = phi(n, &fp) else { return Ok(()) };
        prop_assert_eq!(f.degree(), Some(n));
        prop_assert!(f.leading().is_one());
        prop_assert_eq!(apply_operator(&fp, &f).unwrap(), f.scale(&eigenvalue(&fp, n)));
    }
}
