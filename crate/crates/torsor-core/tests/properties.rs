//! Property tests over randomly chosen catalog instances.

use proptest::prelude::*;
use torsor_core::catalog::{self, gamma_catalog};
use torsor_core::cohomology::{enumerate_cocycles, torsor_set};
use torsor_core::gamma::validate_cocycle_values;
use torsor_core::group::{
    quotient_by, semidirect, subgroups_of, FiniteGroup,
};

fn group_pool() -> Vec<FiniteGroup> {
    vec![
        catalog::cyclic(2),
        catalog::cyclic(6),
        catalog::cyclic(8),
        catalog::klein_four(),
        catalog::symmetric(3).group,
        catalog::dihedral(4),
        catalog::quaternion(),
        catalog::alternating(4).group,
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// |G/N| * |N| = |G| and the projection is onto with kernel exactly N,
    /// for every normal subgroup of every pool group.
    #[test]
    fn quotient_sizes_multiply(pick in 0usize..8, salt in 0usize..32) {
        let g = &group_pool()[pick];
        let subs = subgroups_of(g).unwrap();
        let normal: Vec<_> = subs.iter().filter(|h| h.is_normal_in(g)).collect();
        let n = normal[salt % normal.len()];
        let (q, proj) = quotient_by(g, n).unwrap();
        prop_assert_eq!(q.order() * n.order(), g.order());
        prop_assert!(proj.is_surjective());
        prop_assert_eq!(proj.kernel_members(), n.members().to_vec());
    }

    /// Lagrange: every enumerated subgroup order divides the group order.
    #[test]
    fn subgroup_orders_divide(pick in 0usize..8) {
        let g = &group_pool()[pick];
        for h in subgroups_of(g).unwrap() {
            prop_assert_eq!(g.order() % h.order(), 0);
        }
    }

    /// A semidirect product contains the kernel as a normal subgroup and the
    /// complement as a subgroup, with sizes multiplying.
    #[test]
    fn semidirect_shape(pick_a in 0usize..4, invert in proptest::bool::ANY) {
        let a = [
            catalog::cyclic(3),
            catalog::cyclic(4),
            catalog::cyclic(5),
            catalog::klein_four(),
        ][pick_a].clone();
        let k = catalog::cyclic(2);
        let id: Vec<usize> = (0..a.order()).collect();
        let other: Vec<usize> = if invert {
            (0..a.order()).map(|x| a.inv(x)).collect()
        } else {
            id.clone()
        };
        let prod = semidirect(&a, &k, &[id, other]).unwrap();
        prop_assert_eq!(prod.group.order(), a.order() * k.order());
        let embedded: Vec<usize> = prod.embed_left.map.clone();
        let h = torsor_core::group::Subgroup::new(&prod.group, embedded).unwrap();
        prop_assert!(h.is_normal_in(&prod.group));
        prop_assert!(prod.embed_right.is_injective());
    }

    /// Every enumerated cocycle satisfies the crossed-homomorphism identity,
    /// and its torsor orbit sizes sum to |G|.
    #[test]
    fn cocycles_revalidate(entry in 0usize..1373) {
        let cat = gamma_catalog();
        let e = &cat[entry % cat.len()];
        for x in enumerate_cocycles(&e.gg).unwrap() {
            prop_assert!(validate_cocycle_values(&e.gg, x.values()).is_ok());
            let t = torsor_set(&e.gg, &x);
            let total: usize = t.orbits.iter().map(Vec::len).sum();
            prop_assert_eq!(total, e.gg.group().order());
        }
    }
}
