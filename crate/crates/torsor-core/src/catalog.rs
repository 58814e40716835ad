//! Standard small groups and the exhaustive test catalog of Gamma-groups.
//!
//! The catalog is the fixed family the verification sweeps run over: every
//! group of order at most 8, every Gamma of order at most 4, every action
//! homomorphism and every admissible cyclotomic character.

use crate::error::Result;
use crate::gamma::{make_gamma_group, GammaGroup};
use crate::group::{
    automorphisms_of, build_group_from_generators, direct_product, enumerate_homs, FiniteGroup,
    PermutationGroup,
};
use crate::perm::Perm;

pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    crate::group::build_group(&table).expect("cyclic table is a group")
}

pub fn klein_four() -> FiniteGroup {
    direct_product(&cyclic(2), &cyclic(2))
}

pub fn symmetric(n: usize) -> PermutationGroup {
    assert!((2..=5).contains(&n));
    let transposition = Perm::parse_cycles("(1 2)", n).unwrap();
    let cycle_text = (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ");
    let cycle = Perm::parse_cycles(&format!("({cycle_text})"), n).unwrap();
    build_group_from_generators(&[transposition, cycle]).unwrap()
}

pub fn alternating(n: usize) -> PermutationGroup {
    assert!((3..=5).contains(&n));
    let gens = match n {
        3 => vec![Perm::parse_cycles("(1 2 3)", 3).unwrap()],
        4 => vec![
            Perm::parse_cycles("(1 2)(3 4)", 4).unwrap(),
            Perm::parse_cycles("(1 2 3)", 4).unwrap(),
        ],
        _ => vec![
            Perm::parse_cycles("(1 2 3 4 5)", 5).unwrap(),
            Perm::parse_cycles("(1 2 3)", 5).unwrap(),
        ],
    };
    build_group_from_generators(&gens).unwrap()
}

pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 2);
    let rotation_image: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let reflection_image: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    build_group_from_generators(&[Perm(rotation_image), Perm(reflection_image)])
        .unwrap()
        .group
}

/// The quaternion group as signed unit pairs: 0..3 are 1,i,j,k and 4..7 their
/// negatives.
pub fn quaternion() -> FiniteGroup {
    let unit_mul = |a: usize, b: usize| -> (usize, bool) {
        // axis multiplication with sign: 0=1, 1=i, 2=j, 3=k
        match (a, b) {
            (0, x) => (x, false),
            (x, 0) => (x, false),
            (x, y) if x == y => (0, true),
            (1, 2) => (3, false),
            (2, 3) => (1, false),
            (3, 1) => (2, false),
            (2, 1) => (3, true),
            (3, 2) => (1, true),
            (1, 3) => (2, true),
            _ => unreachable!(),
        }
    };
    let table: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (axis, flip) = unit_mul(x % 4, y % 4);
                    let sign = (x >= 4) ^ (y >= 4) ^ flip;
                    axis + if sign { 4 } else { 0 }
                })
                .collect()
        })
        .collect();
    crate::group::build_group(&table).expect("quaternion table is a group")
}

/// The thirteen nontrivial groups of order at most 8, in a fixed order.
pub fn groups_up_to_8() -> Vec<(String, FiniteGroup)> {
    vec![
        ("C2".into(), cyclic(2)),
        ("C3".into(), cyclic(3)),
        ("C4".into(), cyclic(4)),
        ("V4".into(), klein_four()),
        ("C5".into(), cyclic(5)),
        ("C6".into(), cyclic(6)),
        ("S3".into(), symmetric(3).group),
        ("C7".into(), cyclic(7)),
        ("C8".into(), cyclic(8)),
        ("C4xC2".into(), direct_product(&cyclic(4), &cyclic(2))),
        ("C2^3".into(), direct_product(&klein_four(), &cyclic(2))),
        ("D4".into(), dihedral(4)),
        ("Q8".into(), quaternion()),
    ]
}

/// The groups of order at most 4, used as the Galois-side group.
pub fn gamma_groups_up_to_4() -> Vec<(String, FiniteGroup)> {
    vec![
        ("C1".into(), cyclic(1)),
        ("C2".into(), cyclic(2)),
        ("C3".into(), cyclic(3)),
        ("C4".into(), cyclic(4)),
        ("V4".into(), klein_four()),
    ]
}

/// All homomorphisms Gamma -> units mod e, each as a residue table.
pub fn chi_characters(gamma: &FiniteGroup, exponent: u64) -> Vec<Vec<u64>> {
    if exponent <= 1 {
        return vec![vec![0; gamma.order()]];
    }
    let units: Vec<u64> = (1..exponent)
        .filter(|&u| num_integer::gcd(u, exponent) == 1)
        .collect();
    let unit_index = |u: u64| units.iter().position(|&v| v == u).unwrap();
    // the unit group as a concrete group, then reuse hom enumeration
    let table: Vec<Vec<usize>> = units
        .iter()
        .map(|&a| units.iter().map(|&b| unit_index(a * b % exponent)).collect())
        .collect();
    let unit_group = crate::group::build_group(&table).expect("unit group");
    enumerate_homs(gamma, &unit_group)
        .into_iter()
        .map(|map| map.into_iter().map(|i| units[i]).collect())
        .collect()
}

/// One catalog entry: a Gamma-group with the names of its building blocks.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub group_name: String,
    pub gamma_name: String,
    pub action_index: usize,
    pub chi_index: usize,
    pub gg: GammaGroup,
}

/// The full verification catalog: all (G, Gamma, action, chi) combinations
/// with |G| <= 8 and |Gamma| <= 4.
pub fn gamma_catalog() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for (group_name, g) in groups_up_to_8() {
        let aut = automorphisms_of(&g).expect("catalog groups are tiny");
        let exponent = g.exponent();
        for (gamma_name, gamma) in gamma_groups_up_to_4() {
            let actions = enumerate_homs(&gamma, &aut.group);
            let characters = chi_characters(&gamma, exponent);
            for (action_index, action_hom) in actions.iter().enumerate() {
                let act: Vec<Vec<usize>> = action_hom
                    .iter()
                    .map(|&a| aut.tables[a].clone())
                    .collect();
                for (chi_index, chi) in characters.iter().enumerate() {
                    let gg = make_gamma_group(&g, &gamma, &act, chi)
                        .expect("catalog construction is valid");
                    out.push(CatalogEntry {
                        group_name: group_name.clone(),
                        gamma_name: gamma_name.clone(),
                        action_index,
                        chi_index,
                        gg,
                    });
                }
            }
        }
    }
    out
}

/// Constant model: trivial Galois action, trivial character.
pub fn constant_model(g: &FiniteGroup) -> GammaGroup {
    let gamma = cyclic(1);
    let act = vec![(0..g.order()).collect::<Vec<usize>>()];
    let chi = vec![if g.exponent() <= 1 { 0 } else { 1 }];
    make_gamma_group(g, &gamma, &act, &chi).expect("constant model is valid")
}

/// Constant model over an explicit Gamma that acts trivially.
pub fn constant_model_over(g: &FiniteGroup, gamma: &FiniteGroup) -> GammaGroup {
    let act = vec![(0..g.order()).collect::<Vec<usize>>(); gamma.order()];
    let chi = vec![if g.exponent() <= 1 { 0 } else { 1 }; gamma.order()];
    make_gamma_group(g, gamma, &act, &chi).expect("constant model is valid")
}

/// The mu_m model over the rationals for prime m: G = C_m, Gamma the unit
/// group acting by powering, chi the tautological character.
pub fn mu_model(m: usize) -> Result<GammaGroup> {
    let g = cyclic(m);
    let units: Vec<u64> = (1..m as u64)
        .filter(|&u| num_integer::gcd(u, m as u64) == 1)
        .chain((m == 1).then_some(0))
        .collect();
    let phi = units.len().max(1);
    // Gamma is cyclic generated by a primitive root (m prime keeps this honest)
    let gamma = cyclic(phi);
    let root = primitive_root_mod(m as u64);
    // gamma element k acts by the k-th power of a primitive root
    let mut act: Vec<Vec<usize>> = Vec::with_capacity(phi);
    let mut chi = Vec::with_capacity(phi);
    let mut power: u64 = 1;
    for _ in 0..phi {
        act.push((0..m).map(|x| (x as u64 * power % m as u64) as usize).collect());
        chi.push(power % m as u64);
        power = power * root % m as u64;
    }
    make_gamma_group(&g, &gamma, &act, &chi)
}

fn primitive_root_mod(m: u64) -> u64 {
    if m <= 2 {
        return 1;
    }
    'outer: for candidate in 2..m {
        let mut x = 1u64;
        for k in 1..m - 1 {
            x = x * candidate % m;
            if x == 1 && k < m - 2 {
                continue 'outer;
            }
        }
        if x * candidate % m == 1 {
            return candidate;
        }
    }
    panic!("no primitive root mod {m}");
}
