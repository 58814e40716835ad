//! Finite etale group-scheme models: a finite group with an action of a
//! finite Galois quotient Gamma and a cyclotomic character.
//!
//! The Galois action always factors through a finite quotient when the group
//! is finite, so Gamma is an ordinary finite group here and everything is
//! enumerable. Homs from the roots-of-unity scheme into G are identified
//! with elements of G via a fixed generator; under that identification
//! Gamma acts on conjugacy classes by `p -> act(p)^(chi^-1 mod e)`, which is
//! what `g_star` tabulates.

use crate::error::{Error, Result};
use crate::group::{
    is_automorphism_table, quotient_by, subgroups_of_bounded, FiniteGroup,
    GroupHom, SemidirectProduct, Subgroup, DEFAULT_SUBGROUP_BOUND,
};

/// A finite group with Gamma-action and cyclotomic character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaGroup {
    group: FiniteGroup,
    gamma: FiniteGroup,
    /// Per Gamma element: an automorphism table of `group`.
    act: Vec<Vec<usize>>,
    /// Per Gamma element: a unit residue mod `exponent` (0 when the exponent is 1).
    chi: Vec<u64>,
    exponent: u64,
    constant: bool,
    /// Bookkeeping flag: group order coprime to all residue characteristics.
    /// Nothing enforces it; the finite model has no characteristic.
    tame: bool,
}

impl GammaGroup {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn gamma(&self) -> &FiniteGroup {
        &self.gamma
    }

    pub fn chi(&self) -> &[u64] {
        &self.chi
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Whether the action is trivial (a constant scheme).
    pub fn is_constant(&self) -> bool {
        self.constant
    }

    pub fn tame(&self) -> bool {
        self.tame
    }

    pub fn set_tame(&mut self, tame: bool) {
        self.tame = tame;
    }

    #[inline]
    pub fn act(&self, gamma: usize, x: usize) -> usize {
        self.act[gamma][x]
    }

    pub fn act_table(&self, gamma: usize) -> &[usize] {
        &self.act[gamma]
    }

    pub fn act_tables(&self) -> &[Vec<usize>] {
        &self.act
    }

    /// chi(gamma)^-1 mod e, the exponent appearing in the star action.
    pub fn chi_inverse(&self, gamma: usize) -> u64 {
        mod_inverse(self.chi[gamma], self.exponent)
    }

    /// Does every element of the subgroup act trivially on G?
    pub fn acts_trivially(&self, gamma_members: &[usize]) -> bool {
        gamma_members
            .iter()
            .all(|&d| self.act[d].iter().enumerate().all(|(i, &y)| i == y))
    }
}

fn mod_inverse(x: u64, modulus: u64) -> u64 {
    if modulus <= 1 {
        return 0;
    }
    // extended Euclid on (x, modulus)
    let (mut r0, mut r1) = (modulus as i64, (x % modulus) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    assert_eq!(r0, 1, "{x} is not a unit mod {modulus}");
    t0.rem_euclid(modulus as i64) as u64
}

/// Validate and assemble a Gamma-group.
pub fn make_gamma_group(
    group: &FiniteGroup,
    gamma: &FiniteGroup,
    act: &[Vec<usize>],
    chi: &[u64],
) -> Result<GammaGroup> {
    if act.len() != gamma.order() || chi.len() != gamma.order() {
        return Err(Error::Invalid(format!(
            "action/chi tables sized {}/{} for |Gamma| = {}",
            act.len(),
            chi.len(),
            gamma.order()
        )));
    }
    for (g_idx, table) in act.iter().enumerate() {
        if !is_automorphism_table(group, table) {
            return Err(Error::ActNotHom { gamma: g_idx });
        }
    }
    for a in 0..gamma.order() {
        for b in 0..gamma.order() {
            let ab = gamma.mul(a, b);
            for x in 0..group.order() {
                if act[ab][x] != act[a][act[b][x]] {
                    return Err(Error::ActNotHom { gamma: ab });
                }
            }
        }
    }
    let exponent = group.exponent();
    for (&value, g_idx) in chi.iter().zip(0..) {
        if exponent <= 1 {
            if value != 0 && value != 1 {
                return Err(Error::ChiNotUnit {
                    value,
                    modulus: exponent,
                });
            }
            continue;
        }
        if value >= exponent || num_integer::gcd(value, exponent) != 1 {
            return Err(Error::ChiNotUnit {
                value,
                modulus: exponent,
            });
        }
        let _ = g_idx;
    }
    let norm = |v: u64| if exponent <= 1 { 0 } else { v % exponent };
    for a in 0..gamma.order() {
        for b in 0..gamma.order() {
            if exponent > 1 && norm(chi[a] * chi[b]) != chi[gamma.mul(a, b)] {
                return Err(Error::ChiNotHom { a, b });
            }
        }
    }
    if exponent > 1 && chi[gamma.identity()] != 1 {
        return Err(Error::ChiNotHom {
            a: gamma.identity(),
            b: gamma.identity(),
        });
    }
    let constant = act
        .iter()
        .all(|t| t.iter().enumerate().all(|(i, &y)| i == y));
    Ok(GammaGroup {
        group: group.clone(),
        gamma: gamma.clone(),
        act: act.to_vec(),
        chi: chi.iter().map(|&v| norm(v)).collect(),
        exponent,
        constant,
        tame: true,
    })
}

/// The pointed Gamma-set of conjugacy classes carrying counting functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedGammaSet {
    /// Number of points (conjugacy classes).
    pub points: usize,
    pub basepoint: usize,
    /// Per Gamma element: a permutation of the points.
    pub action: Vec<Vec<usize>>,
    /// Group element -> point.
    pub class_of: Vec<usize>,
    /// Point -> sorted member elements.
    pub class_members: Vec<Vec<usize>>,
}

impl PointedGammaSet {
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of_action(self.points, &self.action)
    }

    pub fn orbit_of_point(&self) -> Vec<usize> {
        let orbits = self.orbits();
        let mut idx = vec![0; self.points];
        for (i, orbit) in orbits.iter().enumerate() {
            for &p in orbit {
                idx[p] = i;
            }
        }
        idx
    }
}

pub(crate) fn orbits_of_action(points: usize, action: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; points];
    let mut orbits = Vec::new();
    for start in 0..points {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(p) = stack.pop() {
            orbit.push(p);
            for table in action {
                let q = table[p];
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| o[0]);
    orbits
}

/// The pointed Gamma-set G^*: conjugacy classes of G with the twisted action
/// `gamma . [g] = [act(gamma)(g) ^ (chi(gamma)^-1 mod e)]`.
pub fn g_star(gg: &GammaGroup) -> PointedGammaSet {
    let group = gg.group();
    let classes = group.conjugacy_classes();
    let mut class_of = vec![0usize; group.order()];
    for (i, class) in classes.iter().enumerate() {
        for &x in class {
            class_of[x] = i;
        }
    }
    let basepoint = class_of[group.identity()];
    let mut action = Vec::with_capacity(gg.gamma().order());
    for gamma in 0..gg.gamma().order() {
        let k = gg.chi_inverse(gamma) as i64;
        let table: Vec<usize> = classes
            .iter()
            .map(|class| {
                let image = group.pow(gg.act(gamma, class[0]), k);
                class_of[image]
            })
            .collect();
        action.push(table);
    }
    debug_assert!(action.iter().all(|t| t[basepoint] == basepoint));
    PointedGammaSet {
        points: classes.len(),
        basepoint,
        action,
        class_of,
        class_members: classes,
    }
}

/// A pointed Gamma-equivariant map of star sets induced by a closed immersion.
#[derive(Debug, Clone)]
pub struct StarMap {
    pub source: PointedGammaSet,
    pub target: PointedGammaSet,
    /// Source point -> target point.
    pub map: Vec<usize>,
}

/// Build `(G')^* -> G^*` from an injective Gamma-equivariant hom.
///
/// Requires the characters to agree after reduction mod the subgroup
/// exponent. Only the basepoint may hit the basepoint.
pub fn star_map(sub: &GammaGroup, ambient: &GammaGroup, iota: &GroupHom) -> Result<StarMap> {
    if sub.gamma() != ambient.gamma() {
        return Err(Error::GammaMismatch);
    }
    if iota.source != *sub.group() || iota.target != *ambient.group() {
        return Err(Error::Invalid("immersion endpoints do not match".into()));
    }
    for a in 0..sub.group().order() {
        for b in 0..a {
            if iota.apply(a) == iota.apply(b) {
                return Err(Error::NotInjective { a, b });
            }
        }
    }
    for gamma in 0..sub.gamma().order() {
        for x in 0..sub.group().order() {
            if iota.apply(sub.act(gamma, x)) != ambient.act(gamma, iota.apply(x)) {
                return Err(Error::NotEquivariant { gamma, element: x });
            }
        }
    }
    let e_sub = sub.exponent();
    for gamma in 0..sub.gamma().order() {
        let reduced = if e_sub <= 1 { 0 } else { ambient.chi()[gamma] % e_sub };
        if sub.chi()[gamma] != reduced {
            return Err(Error::Invalid(format!(
                "character mismatch at gamma {gamma}: {} vs {} mod {}",
                sub.chi()[gamma],
                ambient.chi()[gamma],
                e_sub
            )));
        }
    }
    let source = g_star(sub);
    let target = g_star(ambient);
    let map: Vec<usize> = source
        .class_members
        .iter()
        .map(|class| target.class_of[iota.apply(class[0])])
        .collect();
    for (p, &q) in map.iter().enumerate() {
        if p != source.basepoint && q == target.basepoint {
            return Err(Error::TrivialKernelViolated { point: p });
        }
    }
    for gamma in 0..sub.gamma().order() {
        for p in 0..source.points {
            if map[source.action[gamma][p]] != target.action[gamma][map[p]] {
                return Err(Error::NotEquivariant { gamma, element: p });
            }
        }
    }
    Ok(StarMap { source, target, map })
}

/// Check the crossed-homomorphism identity for a value table over `gg`.
pub fn validate_cocycle_values(gg: &GammaGroup, values: &[usize]) -> Result<()> {
    if values.len() != gg.gamma().order() {
        return Err(Error::Invalid(format!(
            "cocycle has {} values for |Gamma| = {}",
            values.len(),
            gg.gamma().order()
        )));
    }
    for &v in values {
        if v >= gg.group().order() {
            return Err(Error::Invalid(format!("cocycle value {v} out of range")));
        }
    }
    let gamma = gg.gamma();
    let group = gg.group();
    for a in 0..gamma.order() {
        for b in 0..gamma.order() {
            let expect = group.mul(values[a], gg.act(a, values[b]));
            if values[gamma.mul(a, b)] != expect {
                return Err(Error::NotACocycle { a, b });
            }
        }
    }
    Ok(())
}

/// Twist the action by a cocycle: `gamma . g = s(gamma) act(gamma)(g) s(gamma)^-1`.
pub fn twist(gg: &GammaGroup, sigma: &[usize]) -> Result<GammaGroup> {
    validate_cocycle_values(gg, sigma)?;
    let group = gg.group();
    let act: Vec<Vec<usize>> = (0..gg.gamma().order())
        .map(|gamma| {
            (0..group.order())
                .map(|x| group.conj(sigma[gamma], gg.act(gamma, x)))
                .collect()
        })
        .collect();
    make_gamma_group(group, gg.gamma(), &act, gg.chi())
}

/// A Gamma-semidirect product with its data kept around.
#[derive(Debug, Clone)]
pub struct GammaSemidirect {
    pub left: GammaGroup,
    pub right: GammaGroup,
    /// Per element of the right factor: automorphism table of the left group.
    pub phi: Vec<Vec<usize>>,
    pub product: GammaGroup,
    pub embed_left: GroupHom,
    pub embed_right: GroupHom,
    semidirect: SemidirectProduct,
}

impl GammaSemidirect {
    pub fn pair(&self, a: usize, k: usize) -> usize {
        self.semidirect.pair(a, k)
    }

    pub fn unpair(&self, x: usize) -> (usize, usize) {
        self.semidirect.unpair(x)
    }
}

/// Form `A x| K` with the coordinatewise Gamma-action.
///
/// `phi` must be Gamma-equivariant for `gamma . t = gamma o t o gamma^-1`.
/// The product character is assembled per prime power from the factors'
/// characters; prime powers of the product exponent that divide neither
/// factor exponent need `chi_override` (they are genuinely new data).
pub fn gamma_semidirect(
    left: &GammaGroup,
    right: &GammaGroup,
    phi: &[Vec<usize>],
    chi_override: Option<&[u64]>,
) -> Result<GammaSemidirect> {
    if left.gamma() != right.gamma() {
        return Err(Error::GammaMismatch);
    }
    let gamma = left.gamma().clone();
    let semi = crate::group::semidirect(left.group(), right.group(), phi)?;
    // equivariance of phi: act_A(gamma) o phi(k) = phi(act_K(gamma) k) o act_A(gamma)
    for gm in 0..gamma.order() {
        for k in 0..right.group().order() {
            for x in 0..left.group().order() {
                let lhs = left.act(gm, phi[k][x]);
                let rhs = phi[right.act(gm, k)][left.act(gm, x)];
                if lhs != rhs {
                    return Err(Error::PhiNotEquivariant { gamma: gm, element: k });
                }
            }
        }
    }
    let n = semi.group.order();
    let mut act = Vec::with_capacity(gamma.order());
    for gm in 0..gamma.order() {
        let mut table = vec![0usize; n];
        for x in 0..n {
            let (a, k) = semi.unpair(x);
            table[x] = semi.pair(left.act(gm, a), right.act(gm, k));
        }
        act.push(table);
    }
    let exponent = semi.group.exponent();
    let chi = match chi_override {
        Some(values) => values.to_vec(),
        None => combine_characters(&gamma, left, right, exponent)?,
    };
    let product = make_gamma_group(&semi.group, &gamma, &act, &chi)?;
    Ok(GammaSemidirect {
        left: left.clone(),
        right: right.clone(),
        phi: phi.to_vec(),
        product,
        embed_left: semi.embed_left.clone(),
        embed_right: semi.embed_right.clone(),
        semidirect: semi,
    })
}

/// CRT-combine the factor characters at each prime power of `exponent`.
fn combine_characters(
    gamma: &FiniteGroup,
    left: &GammaGroup,
    right: &GammaGroup,
    exponent: u64,
) -> Result<Vec<u64>> {
    if exponent <= 1 {
        return Ok(vec![0; gamma.order()]);
    }
    let e_left = left.exponent();
    let e_right = right.exponent();
    // consistency on the shared part
    let shared = num_integer::gcd(e_left, e_right);
    if shared > 1 {
        for gm in 0..gamma.order() {
            if left.chi()[gm] % shared != right.chi()[gm] % shared {
                return Err(Error::ChiNotHom { a: gm, b: gm });
            }
        }
    }
    let factors = prime_power_factors(exponent);
    let mut chi = vec![0u64; gamma.order()];
    for gm in 0..gamma.order() {
        let mut residues = Vec::new();
        for &(p, pk) in &factors {
            let source = if e_left % pk == 0 {
                left.chi()[gm] % pk
            } else if e_right % pk == 0 {
                right.chi()[gm] % pk
            } else {
                let _ = p;
                return Err(Error::Invalid(format!(
                    "product exponent component {pk} determined by neither factor; \
                     pass an explicit character"
                )));
            };
            residues.push((source, pk));
        }
        chi[gm] = crt(&residues);
    }
    Ok(chi)
}

/// Extend a character to a larger modulus: components at prime powers of the
/// target that divide the source modulus are copied, new components are
/// filled with the trivial residue.
pub fn lift_character(chi: &[u64], from_exponent: u64, to_exponent: u64) -> Vec<u64> {
    if to_exponent <= 1 {
        return vec![0; chi.len()];
    }
    let factors = prime_power_factors(to_exponent);
    chi.iter()
        .map(|&v| {
            let residues: Vec<(u64, u64)> = factors
                .iter()
                .map(|&(_, pk)| {
                    if from_exponent % pk == 0 {
                        (v % pk, pk)
                    } else {
                        (1 % pk, pk)
                    }
                })
                .collect();
            crt(&residues)
        })
        .collect()
}

fn prime_power_factors(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut pk = 1;
            while n % p == 0 {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

fn crt(residues: &[(u64, u64)]) -> u64 {
    let mut x: u64 = 0;
    let mut modulus: u64 = 1;
    for &(r, m) in residues {
        // solve x + modulus * t = r (mod m)
        let t = ((r as i64 - x as i64).rem_euclid(m as i64) as u64 * mod_inverse(modulus % m, m)) % m;
        x += modulus * t;
        modulus *= m;
    }
    x
}

/// Exactly the subgroups fixed setwise by every Gamma element.
pub fn gamma_stable_subgroups(gg: &GammaGroup) -> Result<Vec<Subgroup>> {
    gamma_stable_subgroups_bounded(gg, DEFAULT_SUBGROUP_BOUND)
}

pub fn gamma_stable_subgroups_bounded(gg: &GammaGroup, bound: u64) -> Result<Vec<Subgroup>> {
    let all = subgroups_of_bounded(gg.group(), bound)?;
    Ok(all
        .into_iter()
        .filter(|h| {
            (0..gg.gamma().order()).all(|gamma| {
                let mask = h.mask();
                h.members()
                    .iter()
                    .all(|&x| mask & (1u128 << gg.act(gamma, x)) != 0)
            })
        })
        .collect())
}

/// Restrict a Gamma-group to a Gamma-stable subgroup (with the inclusion).
pub fn restrict_gamma(gg: &GammaGroup, h: &Subgroup) -> Result<(GammaGroup, GroupHom)> {
    for gamma in 0..gg.gamma().order() {
        for &x in h.members() {
            if !h.contains(gg.act(gamma, x)) {
                return Err(Error::NotStable { gamma, moved: x });
            }
        }
    }
    let (sub, embed) = crate::group::subgroup_as_group(gg.group(), h);
    let mut back = vec![usize::MAX; gg.group().order()];
    for (i, &m) in h.members().iter().enumerate() {
        back[m] = i;
    }
    let act: Vec<Vec<usize>> = (0..gg.gamma().order())
        .map(|gamma| {
            h.members()
                .iter()
                .map(|&m| back[gg.act(gamma, m)])
                .collect()
        })
        .collect();
    let e_sub = sub.exponent();
    let chi: Vec<u64> = gg
        .chi()
        .iter()
        .map(|&v| if e_sub <= 1 { 0 } else { v % e_sub })
        .collect();
    let sub_gg = make_gamma_group(&sub, gg.gamma(), &act, &chi)?;
    Ok((sub_gg, embed))
}

/// Quotient a Gamma-group by a Gamma-stable normal subgroup.
pub fn quotient_gamma(gg: &GammaGroup, n: &Subgroup) -> Result<(GammaGroup, GroupHom)> {
    for gamma in 0..gg.gamma().order() {
        for &x in n.members() {
            if !n.contains(gg.act(gamma, x)) {
                return Err(Error::NotStable { gamma, moved: x });
            }
        }
    }
    let (quotient, proj) = quotient_by(gg.group(), n)?;
    let mut rep = vec![usize::MAX; quotient.order()];
    for x in (0..gg.group().order()).rev() {
        rep[proj.apply(x)] = x;
    }
    let act: Vec<Vec<usize>> = (0..gg.gamma().order())
        .map(|gamma| {
            (0..quotient.order())
                .map(|c| proj.apply(gg.act(gamma, rep[c])))
                .collect()
        })
        .collect();
    let e_q = quotient.exponent();
    let chi: Vec<u64> = gg
        .chi()
        .iter()
        .map(|&v| if e_q <= 1 { 0 } else { v % e_q })
        .collect();
    let q_gg = make_gamma_group(&quotient, gg.gamma(), &act, &chi)?;
    Ok((q_gg, proj))
}

/// Gamma-equivariant isomorphism search between two models over the same Gamma.
pub fn find_equivariant_isomorphism(a: &GammaGroup, b: &GammaGroup) -> Option<Vec<usize>> {
    if a.gamma() != b.gamma() || a.exponent() != b.exponent() || a.chi() != b.chi() {
        return None;
    }
    let gamma_order = a.gamma().order();
    crate::group::enumerate_isomorphisms_until(a.group(), b.group(), &mut |map| {
        (0..gamma_order).all(|gm| {
            (0..a.group().order()).all(|x| map[a.act(gm, x)] == b.act(gm, map[x]))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn inversion_model() -> GammaGroup {
        // C3 with Gamma = C2 acting by inversion, chi = -1: the mu_3 model
        catalog::mu_model(3).unwrap()
    }

    #[test]
    fn constant_scheme_is_recorded() {
        let gg = catalog::constant_model(&catalog::cyclic(3));
        assert!(gg.is_constant());
        assert!(gg.tame());
    }

    #[test]
    fn mu3_is_valid_and_nonconstant() {
        let gg = inversion_model();
        assert!(!gg.is_constant());
        assert_eq!(gg.exponent(), 3);
        // action by the nontrivial element is inversion
        assert_eq!(gg.act(1, 1), 2);
    }

    #[test]
    fn non_automorphism_action_is_rejected() {
        let c3 = catalog::cyclic(3);
        let c2 = catalog::cyclic(2);
        let bad_act = vec![vec![0, 1, 2], vec![0, 0, 0]];
        let err = make_gamma_group(&c3, &c2, &bad_act, &[1, 1]).unwrap_err();
        assert!(matches!(err, Error::ActNotHom { gamma: 1 }));
    }

    #[test]
    fn chi_validation() {
        let c3 = catalog::cyclic(3);
        let c2 = catalog::cyclic(2);
        let act = vec![vec![0, 1, 2], vec![0, 2, 1]];
        // 0 is not a unit mod 3
        let err = make_gamma_group(&c3, &c2, &act, &[1, 0]).unwrap_err();
        assert!(matches!(err, Error::ChiNotUnit { value: 0, modulus: 3 }));
        // 2 is a unit but chi(1)*chi(1) = 4 = 1 mod 3, so [1,2] is a hom
        assert!(make_gamma_group(&c3, &c2, &act, &[1, 2]).is_ok());
    }

    #[test]
    fn mu3_star_action_is_trivial() {
        // oracle: compute act(gamma)(g)^(chi^-1) pointwise for every g
        let gg = inversion_model();
        let star = g_star(&gg);
        assert_eq!(star.points, 3);
        for g in 0..3 {
            let by_hand = gg.group().pow(gg.act(1, g), gg.chi_inverse(1) as i64);
            assert_eq!(by_hand, g, "inversion and chi^-1 power cancel");
        }
        assert_eq!(star.action[1], vec![0, 1, 2]);
    }

    #[test]
    fn constant_c3_with_nontrivial_chi_swaps_points() {
        let c3 = catalog::cyclic(3);
        let c2 = catalog::cyclic(2);
        let act = vec![vec![0, 1, 2], vec![0, 1, 2]];
        let gg = make_gamma_group(&c3, &c2, &act, &[1, 2]).unwrap();
        let star = g_star(&gg);
        assert_eq!(star.points, 3);
        assert_eq!(star.action[1], vec![0, 2, 1]);
        assert_eq!(star.orbits(), vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn constant_a4_star_has_four_points() {
        // oracle: conjugacy classes of A4 are 1, V4-part, and two 3-cycle classes
        let gg = catalog::constant_model(&catalog::alternating(4).group);
        let star = g_star(&gg);
        assert_eq!(star.points, 4);
        let mut sizes: Vec<usize> = star.class_members.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 4, 4]);
    }

    #[test]
    fn star_action_is_a_group_action() {
        for entry in catalog::gamma_catalog().into_iter().step_by(7) {
            let star = g_star(&entry.gg);
            let gamma = entry.gg.gamma();
            for a in 0..gamma.order() {
                for b in 0..gamma.order() {
                    let ab = gamma.mul(a, b);
                    for p in 0..star.points {
                        assert_eq!(
                            star.action[ab][p],
                            star.action[a][star.action[b][p]],
                            "{} over {}",
                            entry.group_name,
                            entry.gamma_name
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn star_map_identity_and_v4_in_a4() {
        let a4 = catalog::alternating(4).group;
        let gg = catalog::constant_model(&a4);
        let identity_hom = GroupHom::new(&a4, &a4, (0..12).collect()).unwrap();
        let sm = star_map(&gg, &gg, &identity_hom).unwrap();
        assert_eq!(sm.map, (0..sm.source.points).collect::<Vec<_>>());

        // V4 inside A4: all three involutions land in the double-transposition class
        let v4_members: Vec<usize> = (0..12).filter(|&x| a4.element_order(x) <= 2).collect();
        let v4 = Subgroup::new(&a4, v4_members).unwrap();
        let (sub_gg, embed) = restrict_gamma(&gg, &v4).unwrap();
        let sm = star_map(&sub_gg, &gg, &embed).unwrap();
        assert_eq!(sm.source.points, 4);
        let images: Vec<usize> = (0..4)
            .filter(|&p| p != sm.source.basepoint)
            .map(|p| sm.map[p])
            .collect();
        assert_eq!(images[0], images[1]);
        assert_eq!(images[1], images[2]);
        assert_ne!(images[0], sm.target.basepoint);
    }

    #[test]
    fn star_map_c2_in_s3() {
        let s3 = catalog::symmetric(3).group;
        let gg = catalog::constant_model(&s3);
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::new(&s3, vec![s3.identity(), transposition]).unwrap();
        let (sub_gg, embed) = restrict_gamma(&gg, &h).unwrap();
        let sm = star_map(&sub_gg, &gg, &embed).unwrap();
        let target_star = g_star(&gg);
        let transposition_class = target_star.class_of[transposition];
        let nontrivial = (0..2).find(|&p| p != sm.source.basepoint).unwrap();
        assert_eq!(sm.map[nontrivial], transposition_class);
    }

    #[test]
    fn twisting_by_trivial_changes_nothing() {
        let gg = inversion_model();
        let twisted = twist(&gg, &[0, 0]).unwrap();
        assert_eq!(twisted, gg);
    }

    #[test]
    fn twist_of_constant_s3_is_conjugation() {
        let s3 = catalog::symmetric(3).group;
        let c2 = catalog::cyclic(2);
        let gg = catalog::constant_model_over(&s3, &c2);
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        // constant action: any order-dividing assignment is a cocycle
        let sigma = vec![s3.identity(), transposition];
        let twisted = twist(&gg, &sigma).unwrap();
        for x in 0..6 {
            assert_eq!(twisted.act(1, x), s3.conj(transposition, x));
        }
        // the star set is canonically unchanged
        assert_eq!(g_star(&twisted), g_star(&gg));
    }

    #[test]
    fn twisting_is_reversible() {
        let s3 = catalog::symmetric(3).group;
        let c2 = catalog::cyclic(2);
        let gg = catalog::constant_model_over(&s3, &c2);
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let sigma = vec![s3.identity(), transposition];
        let twisted = twist(&gg, &sigma).unwrap();
        // untwist with the pointwise inverse (valid over the twisted group)
        let sigma_inv: Vec<usize> = sigma.iter().map(|&v| s3.inv(v)).collect();
        let back = twist(&twisted, &sigma_inv).unwrap();
        assert_eq!(back, gg);
    }

    #[test]
    fn gamma_semidirect_builds_constant_s3() {
        let c3 = catalog::cyclic(3);
        let c2 = catalog::cyclic(2);
        let gamma = catalog::cyclic(2);
        let a = catalog::constant_model_over(&c3, &gamma);
        let k = catalog::constant_model_over(&c2, &gamma);
        let invert: Vec<usize> = (0..3).map(|x| c3.inv(x)).collect();
        let phi = vec![(0..3).collect::<Vec<usize>>(), invert];
        let semi = gamma_semidirect(&a, &k, &phi, None).unwrap();
        assert!(semi.product.is_constant());
        let expected = catalog::constant_model_over(&catalog::symmetric(3).group, &gamma);
        assert!(find_equivariant_isomorphism(&semi.product, &expected).is_some());
    }

    #[test]
    fn gamma_semidirect_rejects_unequivariant_phi() {
        // Gamma = C2 acts on A = V4 by an involution of Aut(V4); phi sends the
        // K = C2 generator to an automorphism that involution does not
        // normalize, so the coordinatewise action fails to be by automorphisms.
        let v4 = catalog::klein_four();
        let c2 = catalog::cyclic(2);
        let gamma = catalog::cyclic(2);
        let aut = crate::group::automorphisms_of(&v4).unwrap();
        let swap = (1..aut.group.order())
            .find(|&i| aut.group.element_order(i) == 2)
            .unwrap();
        let a_v4 = make_gamma_group(
            &v4,
            &gamma,
            &[aut.tables[0].clone(), aut.tables[swap].clone()],
            &[1, 1],
        )
        .unwrap();
        let k_c2 = catalog::constant_model_over(&c2, &gamma);
        let other = (1..aut.group.order())
            .find(|&i| {
                aut.group.element_order(i) == 2
                    && aut.group.mul(swap, aut.group.mul(i, swap)) != i
            })
            .unwrap();
        let phi = vec![aut.tables[0].clone(), aut.tables[other].clone()];
        let err = gamma_semidirect(&a_v4, &k_c2, &phi, None).unwrap_err();
        assert!(matches!(err, Error::PhiNotEquivariant { .. }));
    }

    #[test]
    fn stable_subgroups() {
        // constant model: every subgroup is stable
        let s3 = catalog::symmetric(3).group;
        let gg = catalog::constant_model(&s3);
        assert_eq!(gamma_stable_subgroups(&gg).unwrap().len(), 6);

        // C3 with inversion: all subgroups characteristic
        let gg = inversion_model();
        assert_eq!(gamma_stable_subgroups(&gg).unwrap().len(), 2);

        // V4 with the factor swap: trivial, diagonal, full
        let v4 = catalog::klein_four();
        let c2 = catalog::cyclic(2);
        // element ids: (a,b) -> b*2+a, so the swap is [0,2,1,3]
        let swap = vec![0, 2, 1, 3];
        let gg = make_gamma_group(&v4, &c2, &[vec![0, 1, 2, 3], swap], &[1, 1]).unwrap();
        let stable = gamma_stable_subgroups(&gg).unwrap();
        let orders: Vec<usize> = stable.iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        assert_eq!(stable[1].members(), &[0, 3]); // the diagonal
    }

    #[test]
    fn quotient_gamma_reduces_chi() {
        let gg = inversion_model();
        let full = Subgroup::full(gg.group());
        let (q, _) = quotient_gamma(&gg, &full).unwrap();
        assert_eq!(q.group().order(), 1);
        assert_eq!(q.chi(), &[0, 0]);
    }
}
