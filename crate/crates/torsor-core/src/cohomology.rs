//! Cocycles, H^1 as a pointed set, torsors as Gamma-sets, twisting
//! bijections, quotient and product torsors, local place models and the
//! connectedness machinery.
//!
//! "Continuous" is vacuous here: Gamma is finite.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::gamma::{
    orbits_of_action, twist, validate_cocycle_values, GammaGroup, GammaSemidirect,
};
use crate::group::{mask_of_members, members_of_mask, FiniteGroup, GroupHom, Subgroup};

/// Default cap on the `|G|^(generators of Gamma)` assignment space.
pub const DEFAULT_COCYCLE_SPACE: u64 = 1 << 20;

/// A crossed homomorphism Gamma -> G, stored as its value table.
///
/// The host Gamma-group is passed alongside wherever it is needed; values
/// are validated against it on construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cocycle {
    values: Vec<usize>,
}

impl Cocycle {
    pub fn new(host: &GammaGroup, values: Vec<usize>) -> Result<Cocycle> {
        validate_cocycle_values(host, &values)?;
        Ok(Cocycle { values })
    }

    pub fn trivial(host: &GammaGroup) -> Cocycle {
        Cocycle {
            values: vec![host.group().identity(); host.gamma().order()],
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn value(&self, gamma: usize) -> usize {
        self.values[gamma]
    }

    pub fn is_trivial(&self, host: &GammaGroup) -> bool {
        self.values.iter().all(|&v| v == host.group().identity())
    }
}

/// All crossed homomorphisms, in lexicographic order of their value tables.
pub fn enumerate_cocycles(gg: &GammaGroup) -> Result<Vec<Cocycle>> {
    enumerate_cocycles_bounded(gg, DEFAULT_COCYCLE_SPACE)
}

pub fn enumerate_cocycles_bounded(gg: &GammaGroup, bound: u64) -> Result<Vec<Cocycle>> {
    let gens = gg.gamma().generating_sequence();
    let space = (gg.group().order() as u64)
        .checked_pow(gens.len() as u32)
        .unwrap_or(u64::MAX);
    if space > bound {
        return Err(Error::BoundExceeded {
            what: "cocycle enumeration",
            needed: space,
            bound,
        });
    }
    let n = gg.group().order();
    let gamma_order = gg.gamma().order();
    let mut out = Vec::new();
    let mut assignment = vec![0usize; gens.len()];
    loop {
        if let Some(values) = extend_cocycle(gg, &gens, &assignment) {
            out.push(Cocycle { values });
        }
        // odometer over generator images
        let mut i = 0;
        loop {
            if i == assignment.len() {
                out.sort();
                debug_assert!(out.iter().all(|c| c.values.len() == gamma_order));
                return Ok(out);
            }
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
            i += 1;
        }
    }
}

/// Propagate generator values through Gamma with the cocycle identity, then
/// verify the identity on all pairs.
fn extend_cocycle(gg: &GammaGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let gamma = gg.gamma();
    let group = gg.group();
    let mut values = vec![usize::MAX; gamma.order()];
    values[gamma.identity()] = group.identity();
    let mut frontier = vec![gamma.identity()];
    while let Some(x) = frontier.pop() {
        for (gi, &gen) in gens.iter().enumerate() {
            let y = gamma.mul(x, gen);
            let v = group.mul(values[x], gg.act(x, images[gi]));
            if values[y] == usize::MAX {
                values[y] = v;
                frontier.push(y);
            } else if values[y] != v {
                return None;
            }
        }
    }
    for a in 0..gamma.order() {
        for b in 0..gamma.order() {
            if values[gamma.mul(a, b)] != group.mul(values[a], gg.act(a, values[b])) {
                return None;
            }
        }
    }
    Some(values)
}

/// The coboundary translate `g . f = (gamma -> g^-1 f(gamma) act(gamma)(g))`.
pub fn coboundary_translate(gg: &GammaGroup, g: usize, f: &Cocycle) -> Cocycle {
    let group = gg.group();
    let values = (0..gg.gamma().order())
        .map(|gamma| group.mul(group.mul(group.inv(g), f.value(gamma)), gg.act(gamma, g)))
        .collect();
    Cocycle { values }
}

/// H^1 as a partition of the cocycle list into coboundary classes.
#[derive(Debug, Clone)]
pub struct H1Partition {
    pub cocycles: Vec<Cocycle>,
    /// Sorted index lists; classes ordered by their minimal cocycle index.
    pub classes: Vec<Vec<usize>>,
    pub basepoint_class: usize,
}

impl H1Partition {
    /// Lexicographically minimal cocycle of a class: the canonical
    /// representative used for height evaluation.
    pub fn representative(&self, class: usize) -> &Cocycle {
        &self.cocycles[self.classes[class][0]]
    }

    pub fn class_of_cocycle(&self, index: usize) -> usize {
        self.classes
            .iter()
            .position(|c| c.binary_search(&index).is_ok())
            .expect("every cocycle is classified")
    }
}

pub fn h1_classes(gg: &GammaGroup) -> Result<H1Partition> {
    h1_classes_bounded(gg, DEFAULT_COCYCLE_SPACE)
}

pub fn h1_classes_bounded(gg: &GammaGroup, bound: u64) -> Result<H1Partition> {
    let cocycles = enumerate_cocycles_bounded(gg, bound)?;
    let index: HashMap<&Cocycle, usize> = cocycles.iter().zip(0..).collect();
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..cocycles.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class_of[start] = id;
        let mut head = 0;
        while head < members.len() {
            let current = cocycles[members[head]].clone();
            head += 1;
            for g in 0..gg.group().order() {
                let translated = coboundary_translate(gg, g, &current);
                let j = index[&translated];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    let trivial = Cocycle::trivial(gg);
    let basepoint_class = class_of[index[&trivial]];
    Ok(H1Partition {
        cocycles,
        classes,
        basepoint_class,
    })
}

/// A finite Gamma-set with its orbit partition. Torsor sets are the case
/// where the points are the group elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSet {
    pub points: usize,
    /// Per Gamma element: permutation of the points.
    pub action: Vec<Vec<usize>>,
    pub orbits: Vec<Vec<usize>>,
}

pub type TorsorSet = GammaSet;

impl GammaSet {
    pub fn from_action(points: usize, action: Vec<Vec<usize>>) -> GammaSet {
        let orbits = orbits_of_action(points, &action);
        GammaSet {
            points,
            action,
            orbits,
        }
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits.len() == 1
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }
}

/// The torsor attached to a cocycle: G's elements with `gamma . h = x(gamma) act(gamma)(h)`.
pub fn torsor_set(gg: &GammaGroup, x: &Cocycle) -> GammaSet {
    let group = gg.group();
    let action: Vec<Vec<usize>> = (0..gg.gamma().order())
        .map(|gamma| {
            (0..group.order())
                .map(|h| group.mul(x.value(gamma), gg.act(gamma, h)))
                .collect()
        })
        .collect();
    GammaSet::from_action(group.order(), action)
}

/// Connected = the geometric points form a transitive Gamma-set.
pub fn is_connected(gg: &GammaGroup, x: &Cocycle) -> bool {
    torsor_set(gg, x).is_transitive()
}

/// The twisting bijection on cocycles: `f -> f . sigma` pointwise.
///
/// `x` lives over `twist(gg, sigma)`; the result lives over `gg`.
pub fn lambda_sigma(gg: &GammaGroup, sigma: &Cocycle, x: &Cocycle) -> Result<Cocycle> {
    validate_cocycle_values(gg, sigma.values())?;
    let twisted = twist(gg, sigma.values())?;
    validate_cocycle_values(&twisted, x.values())?;
    let group = gg.group();
    let values: Vec<usize> = (0..gg.gamma().order())
        .map(|gamma| group.mul(x.value(gamma), sigma.value(gamma)))
        .collect();
    Cocycle::new(gg, values)
}

/// Push a cocycle forward along a Gamma-equivariant homomorphism.
pub fn pushforward_cocycle(
    source: &GammaGroup,
    target: &GammaGroup,
    hom: &GroupHom,
    x: &Cocycle,
) -> Result<Cocycle> {
    if source.gamma() != target.gamma() {
        return Err(Error::GammaMismatch);
    }
    for gamma in 0..source.gamma().order() {
        for g in 0..source.group().order() {
            if hom.apply(source.act(gamma, g)) != target.act(gamma, hom.apply(g)) {
                return Err(Error::NotEquivariant { gamma, element: g });
            }
        }
    }
    Cocycle::new(target, x.values().iter().map(|&v| hom.apply(v)).collect())
}

/// Compose a cocycle with the projection mod a Gamma-stable normal subgroup.
///
/// Returns the quotient model, the projection and the projected cocycle.
pub fn quotient_cocycle(
    gg: &GammaGroup,
    n: &Subgroup,
    x: &Cocycle,
) -> Result<(GammaGroup, GroupHom, Cocycle)> {
    let (q_gg, proj) = crate::gamma::quotient_gamma(gg, n)?;
    let projected = pushforward_cocycle(gg, &q_gg, &proj, x)?;
    Ok((q_gg, proj, projected))
}

/// Collapse a torsor set by right translation of a subgroup.
///
/// The points must be the elements of `gg.group()` (a torsor set).
pub fn quotient_by_right_translation(
    gg: &GammaGroup,
    torsor: &GammaSet,
    n: &Subgroup,
) -> GammaSet {
    let group = gg.group();
    assert_eq!(torsor.points, group.order());
    let mut coset_of = vec![usize::MAX; group.order()];
    let mut count = 0;
    for x in 0..group.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &h in n.members() {
            let y = group.mul(x, h);
            if coset_of[y] == usize::MAX {
                coset_of[y] = count;
            }
        }
        count += 1;
    }
    let action: Vec<Vec<usize>> = torsor
        .action
        .iter()
        .map(|table| {
            let mut t = vec![usize::MAX; count];
            for x in 0..group.order() {
                t[coset_of[x]] = coset_of[table[x]];
            }
            t
        })
        .collect();
    GammaSet::from_action(count, action)
}

/// Product of two Gamma-sets with the diagonal action.
///
/// Pair `(x, y)` becomes point `y * |X| + x`.
pub fn fiber_product(gamma: &FiniteGroup, x: &GammaSet, y: &GammaSet) -> Result<GammaSet> {
    if x.action.len() != gamma.order() || y.action.len() != gamma.order() {
        return Err(Error::GammaMismatch);
    }
    let points = x.points * y.points;
    let action: Vec<Vec<usize>> = (0..gamma.order())
        .map(|gm| {
            (0..points)
                .map(|p| {
                    let (px, py) = (p % x.points, p / x.points);
                    y.action[gm][py] * x.points + x.action[gm][px]
                })
                .collect()
        })
        .collect();
    Ok(GammaSet::from_action(points, action))
}

/// Backtracking Gamma-set isomorphism: orbit by orbit, a basepoint
/// assignment propagates through the action and either closes up or dies.
pub fn gamma_set_isomorphic(gamma: &FiniteGroup, a: &GammaSet, b: &GammaSet) -> Option<Vec<usize>> {
    if a.points != b.points || a.orbit_sizes() != b.orbit_sizes() {
        return None;
    }
    let mut map = vec![usize::MAX; a.points];
    let mut used = vec![false; b.points];
    fn solve(
        gamma: &FiniteGroup,
        a: &GammaSet,
        b: &GammaSet,
        orbit_idx: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if orbit_idx == a.orbits.len() {
            return true;
        }
        let orbit = &a.orbits[orbit_idx];
        let start = orbit[0];
        for candidate in 0..b.points {
            if used[candidate] {
                continue;
            }
            // propagate start -> candidate through the whole orbit
            let mut local: HashMap<usize, usize> = HashMap::new();
            local.insert(start, candidate);
            let mut queue = vec![start];
            let mut ok = true;
            let mut taken = vec![candidate];
            'bfs: while let Some(p) = queue.pop() {
                let q = local[&p];
                for gm in 0..gamma.order() {
                    let pa = a.action[gm][p];
                    let qb = b.action[gm][q];
                    match local.get(&pa) {
                        Some(&existing) => {
                            if existing != qb {
                                ok = false;
                                break 'bfs;
                            }
                        }
                        None => {
                            if used[qb] || taken.contains(&qb) {
                                ok = false;
                                break 'bfs;
                            }
                            local.insert(pa, qb);
                            taken.push(qb);
                            queue.push(pa);
                        }
                    }
                }
            }
            if ok && local.len() == orbit.len() {
                let distinct: std::collections::HashSet<usize> = local.values().copied().collect();
                if distinct.len() == orbit.len() {
                    for (&p, &q) in &local {
                        map[p] = q;
                        used[q] = true;
                    }
                    if solve(gamma, a, b, orbit_idx + 1, map, used) {
                        return true;
                    }
                    for (&p, &q) in &local {
                        map[p] = usize::MAX;
                        used[q] = false;
                    }
                }
            }
        }
        false
    }
    solve(gamma, a, b, 0, &mut map, &mut used).then_some(map)
}

/// The data of `A x| K` torsor assembly: the twisted kernel and the
/// composed cocycle `gamma -> (x(gamma), theta(gamma))`.
pub struct TwistedKernel {
    /// `A` with the action `gamma . a = phi(theta(gamma))(act(gamma)(a))`.
    pub twisted: GammaGroup,
    /// theta embedded into the product: `gamma -> (1, theta(gamma))`.
    pub sigma: Cocycle,
}

/// Twist the kernel of a Gamma-semidirect product by (the embedding of) a
/// cocycle over the complement.
pub fn twisted_kernel(data: &GammaSemidirect, theta: &Cocycle) -> Result<TwistedKernel> {
    validate_cocycle_values(&data.right, theta.values())?;
    let sigma_values: Vec<usize> = theta
        .values()
        .iter()
        .map(|&k| data.pair(data.left.group().identity(), k))
        .collect();
    let sigma = Cocycle::new(&data.product, sigma_values)?;
    let act: Vec<Vec<usize>> = (0..data.left.gamma().order())
        .map(|gamma| {
            let t = theta.value(gamma);
            (0..data.left.group().order())
                .map(|a| data.phi[t][data.left.act(gamma, a)])
                .collect()
        })
        .collect();
    let twisted = crate::gamma::make_gamma_group(
        data.left.group(),
        data.left.gamma(),
        &act,
        data.left.chi(),
    )?;
    Ok(TwistedKernel { twisted, sigma })
}

/// The torsor-assembly map: a cocycle over the twisted kernel and one over
/// the complement combine to `gamma -> (x(gamma), theta(gamma))` over the
/// (untwisted) semidirect product.
pub fn u_sigma_phi(data: &GammaSemidirect, theta: &Cocycle, x: &Cocycle) -> Result<Cocycle> {
    let kernel = twisted_kernel(data, theta)?;
    validate_cocycle_values(&kernel.twisted, x.values())?;
    let values: Vec<usize> = (0..data.product.gamma().order())
        .map(|gamma| data.pair(x.value(gamma), theta.value(gamma)))
        .collect();
    Cocycle::new(&data.product, values)
}

/// Variant taking sigma directly; rejects values outside the embedded
/// complement.
pub fn u_sigma_phi_raw(data: &GammaSemidirect, sigma: &Cocycle, x: &Cocycle) -> Result<Cocycle> {
    validate_cocycle_values(&data.product, sigma.values())?;
    let id_left = data.left.group().identity();
    let mut theta_values = Vec::with_capacity(sigma.values().len());
    for (gamma, &v) in sigma.values().iter().enumerate() {
        let (a, k) = data.unpair(v);
        if a != id_left {
            return Err(Error::SigmaNotFromK { gamma });
        }
        theta_values.push(k);
    }
    let theta = Cocycle::new(&data.right, theta_values)?;
    u_sigma_phi(data, &theta, x)
}

/// A finite-model place: residue size, decomposition and inertia subgroups
/// of Gamma, a tame inertia generator and a Frobenius coset representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceModel {
    pub label: String,
    pub q: u64,
    pub decomposition: Subgroup,
    pub inertia: Subgroup,
    pub tame_generator: usize,
    pub frobenius: usize,
}

impl PlaceModel {
    pub fn new(
        gamma: &FiniteGroup,
        label: &str,
        q: u64,
        decomposition: Vec<usize>,
        inertia: Vec<usize>,
        tame_generator: usize,
        frobenius: usize,
    ) -> Result<PlaceModel> {
        let fail = |reason: &str| Error::InvalidPlace {
            label: label.to_string(),
            reason: reason.to_string(),
        };
        if !is_prime_power(q) {
            return Err(fail(&format!("q = {q} is not a prime power")));
        }
        for &x in decomposition.iter().chain(inertia.iter()) {
            if x >= gamma.order() {
                return Err(Error::PlaceNotInGamma {
                    label: label.to_string(),
                    reason: format!("element {x} outside Gamma"),
                });
            }
        }
        let decomposition = Subgroup::new(gamma, decomposition)
            .map_err(|_| fail("decomposition set is not a subgroup"))?;
        let inertia =
            Subgroup::new(gamma, inertia).map_err(|_| fail("inertia set is not a subgroup"))?;
        if !inertia.members().iter().all(|&x| decomposition.contains(x)) {
            return Err(fail("inertia is not contained in the decomposition group"));
        }
        for &d in decomposition.members() {
            for &i in inertia.members() {
                if !inertia.contains(gamma.conj(d, i)) {
                    return Err(fail("inertia is not normal in the decomposition group"));
                }
            }
        }
        if !inertia.contains(tame_generator) {
            return Err(fail("tame generator lies outside inertia"));
        }
        // tame generator must generate inertia (inertia is cyclic after tameness)
        let generated = members_of_mask(gamma.closure_of(&[tame_generator]));
        if mask_of_members(&generated) != inertia.mask() {
            return Err(fail("tame generator does not generate inertia"));
        }
        if !decomposition.contains(frobenius) {
            return Err(fail("frobenius lies outside the decomposition group"));
        }
        // the frobenius coset must generate the cyclic unramified quotient
        let (dec_group, dec_embed) = crate::group::subgroup_as_group(gamma, &decomposition);
        let back = |x: usize| {
            dec_embed
                .map
                .iter()
                .position(|&y| y == x)
                .expect("member of decomposition")
        };
        let inertia_in_dec =
            Subgroup::new(&dec_group, inertia.members().iter().map(|&x| back(x)).collect())
                .expect("inertia inside decomposition");
        let (quot, proj) = crate::group::quotient_by(&dec_group, &inertia_in_dec)
            .map_err(|_| fail("inertia not normal in decomposition"))?;
        let frob_image = proj.apply(back(frobenius));
        if quot.element_order(frob_image) as usize != quot.order() {
            return Err(fail("frobenius does not generate the unramified quotient"));
        }
        Ok(PlaceModel {
            label: label.to_string(),
            q,
            decomposition,
            inertia,
            tame_generator,
            frobenius,
        })
    }

    /// Order of the residue extension cut out by Frobenius.
    pub fn unramified_degree(&self) -> usize {
        self.decomposition.order() / self.inertia.order()
    }
}

fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut n = q;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true // q itself prime
}

/// The local symbol: the G^*-class of the cocycle's value on the tame
/// inertia generator.
///
/// Defined on cocycles, not on classes: in the finite model a coboundary can
/// move the value; class-level evaluation picks the canonical representative.
pub fn psi_v(gg: &GammaGroup, star: &crate::gamma::PointedGammaSet, x: &Cocycle, v: &PlaceModel) -> Result<usize> {
    check_place_in_gamma(gg, v)?;
    Ok(star.class_of[x.value(v.tame_generator)])
}

/// Unramified = trivial on the whole inertia subgroup.
pub fn is_unramified(gg: &GammaGroup, x: &Cocycle, v: &PlaceModel) -> Result<bool> {
    check_place_in_gamma(gg, v)?;
    Ok(v
        .inertia
        .members()
        .iter()
        .all(|&i| x.value(i) == gg.group().identity()))
}

fn check_place_in_gamma(gg: &GammaGroup, v: &PlaceModel) -> Result<()> {
    if v.decomposition.parent_order() != gg.gamma().order() {
        return Err(Error::PlaceNotInGamma {
            label: v.label.clone(),
            reason: "decomposition group sized for a different Gamma".into(),
        });
    }
    Ok(())
}

/// Local conditions that force connectedness: one unramified place per
/// nontrivial group element, with prescribed Frobenius image.
#[derive(Debug, Clone)]
pub struct ForcingConditions {
    /// (place, required generator of the Frobenius image).
    pub conditions: Vec<(PlaceModel, usize)>,
}

impl ForcingConditions {
    /// Does the cocycle satisfy every condition (unramified with Frobenius
    /// image generating the prescribed cyclic subgroup)?
    pub fn satisfied_by(&self, gg: &GammaGroup, x: &Cocycle) -> Result<bool> {
        let group = gg.group();
        for (place, g) in &self.conditions {
            if !is_unramified(gg, x, place)? {
                return Ok(false);
            }
            let image = x.value(place.frobenius);
            if group.closure_of(&[image]) != group.closure_of(&[*g]) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Choose one place per nontrivial element of G.
///
/// Each chosen place must avoid the excluded labels, act trivially on G
/// (the constant condition) and have a Frobenius of compatible order, so the
/// prescribed unramified class exists. Any cocycle satisfying the resulting
/// conditions has local images generating G and is therefore connected.
pub fn forcing_conditions(
    gg: &GammaGroup,
    available: &[PlaceModel],
    excluded: &[String],
) -> Result<ForcingConditions> {
    let group = gg.group();
    let mut used: Vec<&str> = Vec::new();
    let mut conditions = Vec::new();
    for g in 0..group.order() {
        if g == group.identity() {
            continue;
        }
        let ord_g = group.element_order(g);
        let found = available.iter().find(|place| {
            !excluded.contains(&place.label)
                && !used.contains(&place.label.as_str())
                && gg.acts_trivially(place.decomposition.members())
                && place.unramified_degree() as u64 % ord_g == 0
        });
        match found {
            Some(place) => {
                check_place_in_gamma(gg, place)?;
                used.push(&place.label);
                conditions.push((place.clone(), g));
            }
            None => {
                return Err(Error::InsufficientPlaces {
                    element: g,
                    reason: format!(
                        "no unused place outside the excluded set acts trivially on G \
                         with Frobenius order divisible by {ord_g}"
                    ),
                });
            }
        }
    }
    Ok(ForcingConditions { conditions })
}

/// The Dirichlet density of places with a degree-one point over the fixed
/// field of `h`: the union of conjugates of `h` over the order of the group.
///
/// Strictly below one for every proper subgroup.
pub fn degree_one_density(gal: &FiniteGroup, h: &Subgroup) -> Result<Ratio<BigInt>> {
    if h.parent_order() != gal.order() {
        return Err(Error::NotASubgroup {
            witness: h.members().first().copied().unwrap_or(0),
        });
    }
    let mut union: u128 = 0;
    for g in 0..gal.order() {
        for &x in h.members() {
            union |= 1u128 << gal.conj(g, x);
        }
    }
    Ok(Ratio::new(
        BigInt::from(union.count_ones()),
        BigInt::from(gal.order() as u64),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::gamma::{g_star, gamma_semidirect};

    fn constant_over_c2(g: &FiniteGroup) -> GammaGroup {
        catalog::constant_model_over(g, &catalog::cyclic(2))
    }

    #[test]
    fn trivial_gamma_has_one_cocycle() {
        let gg = catalog::constant_model(&catalog::cyclic(3));
        let cocycles = enumerate_cocycles(&gg).unwrap();
        assert_eq!(cocycles.len(), 1);
        assert!(cocycles[0].is_trivial(&gg));
    }

    #[test]
    fn c2_trivial_action_has_two_cocycles() {
        // oracle: assignments t -> g with g^2 = 1; both elements qualify
        let gg = constant_over_c2(&catalog::cyclic(2));
        let cocycles = enumerate_cocycles(&gg).unwrap();
        assert_eq!(cocycles.len(), 2);
    }

    #[test]
    fn c2_inversion_on_c3_has_three_cocycles() {
        // oracle: t -> g needs g * act(t)(g) = g * g^-1 = 1, true for all three
        let gg = catalog::mu_model(3).unwrap();
        let cocycles = enumerate_cocycles(&gg).unwrap();
        assert_eq!(cocycles.len(), 3);
        for x in &cocycles {
            validate_cocycle_values(&gg, x.values()).unwrap();
        }
    }

    #[test]
    fn h1_sizes() {
        let gg = catalog::constant_model(&catalog::cyclic(5));
        assert_eq!(h1_classes(&gg).unwrap().classes.len(), 1);

        let gg = constant_over_c2(&catalog::cyclic(2));
        let h1 = h1_classes(&gg).unwrap();
        assert_eq!(h1.classes.len(), 2);

        // all three cocycles are coboundaries g^-1 * (t . g)
        let gg = catalog::mu_model(3).unwrap();
        let h1 = h1_classes(&gg).unwrap();
        assert_eq!(h1.classes.len(), 1);
        assert_eq!(h1.classes[0].len(), 3);
        assert_eq!(h1.basepoint_class, 0);
    }

    #[test]
    fn torsor_connectivity() {
        // trivial cocycle over a constant nontrivial group: every point fixed
        let gg = constant_over_c2(&catalog::cyclic(2));
        let trivial = Cocycle::trivial(&gg);
        let t = torsor_set(&gg, &trivial);
        assert_eq!(t.orbits.len(), 2);
        assert!(!is_connected(&gg, &trivial));

        // the nontrivial assignment is transitive
        let connected = Cocycle::new(&gg, vec![0, 1]).unwrap();
        assert!(is_connected(&gg, &connected));
    }

    #[test]
    fn lambda_sigma_is_a_bijection_on_cocycles() {
        let s3 = catalog::symmetric(3).group;
        let gg = constant_over_c2(&s3);
        for sigma in enumerate_cocycles(&gg).unwrap() {
            let twisted = twist(&gg, sigma.values()).unwrap();
            let twisted_cocycles = enumerate_cocycles(&twisted).unwrap();
            let originals = enumerate_cocycles(&gg).unwrap();
            assert_eq!(twisted_cocycles.len(), originals.len());
            let mut images: Vec<Cocycle> = twisted_cocycles
                .iter()
                .map(|x| lambda_sigma(&gg, &sigma, x).unwrap())
                .collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), originals.len());
            // the trivial cocycle maps to sigma itself
            let trivial = Cocycle::trivial(&twisted);
            assert_eq!(lambda_sigma(&gg, &sigma, &trivial).unwrap(), sigma);
        }
    }

    #[test]
    fn quotient_cocycle_is_the_sign() {
        let s3 = catalog::symmetric(3).group;
        let gg = constant_over_c2(&s3);
        let a3_members: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let a3 = Subgroup::new(&s3, a3_members).unwrap();
        for x in enumerate_cocycles(&gg).unwrap() {
            let (q_gg, proj, projected) = quotient_cocycle(&gg, &a3, &x).unwrap();
            assert_eq!(q_gg.group().order(), 2);
            for gamma in 0..2 {
                let sign = if s3.element_order(x.value(gamma)) == 2 { 1 } else { 0 };
                let image = projected.value(gamma);
                let expect_nontrivial = sign == 1;
                assert_eq!(image != q_gg.group().identity(), expect_nontrivial);
            }
            let _ = proj;
        }
    }

    #[test]
    fn quotient_matches_right_translation_orbits() {
        let s3 = catalog::symmetric(3).group;
        let gg = constant_over_c2(&s3);
        let a3_members: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let a3 = Subgroup::new(&s3, a3_members).unwrap();
        for x in enumerate_cocycles(&gg).unwrap() {
            let (q_gg, _, projected) = quotient_cocycle(&gg, &a3, &x).unwrap();
            let direct = torsor_set(&q_gg, &projected);
            let collapsed = quotient_by_right_translation(&gg, &torsor_set(&gg, &x), &a3);
            assert!(gamma_set_isomorphic(gg.gamma(), &direct, &collapsed).is_some());
        }
    }

    #[test]
    fn fiber_product_orbit_counts() {
        // trivial second factor over a constant group: orbits multiply
        let c2 = catalog::cyclic(2);
        let gg = constant_over_c2(&c2);
        let connected = Cocycle::new(&gg, vec![0, 1]).unwrap();
        let x = torsor_set(&gg, &connected);
        let trivial_torsor = torsor_set(&gg, &Cocycle::trivial(&gg));
        let prod = fiber_product(gg.gamma(), &x, &trivial_torsor).unwrap();
        assert_eq!(prod.orbits.len(), x.orbits.len() * 2);

        // X = Y = the connected C2-torsor: two orbits
        let prod = fiber_product(gg.gamma(), &x, &x).unwrap();
        assert_eq!(prod.orbits.len(), 2);
    }

    #[test]
    fn coprime_connected_product_is_connected() {
        let gamma = catalog::cyclic(6);
        let c2 = catalog::constant_model_over(&catalog::cyclic(2), &gamma);
        let c3 = catalog::constant_model_over(&catalog::cyclic(3), &gamma);
        let x2 = Cocycle::new(&c2, vec![0, 1, 0, 1, 0, 1]).unwrap();
        let x3 = Cocycle::new(&c3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        let t2 = torsor_set(&c2, &x2);
        let t3 = torsor_set(&c3, &x3);
        assert!(t2.is_transitive() && t3.is_transitive());
        let prod = fiber_product(&gamma, &t2, &t3).unwrap();
        assert!(prod.is_transitive());
    }

    #[test]
    fn u_sigma_phi_small_case() {
        // A = C3 constant, K = C2 constant, phi = inversion, Gamma = C2
        let gamma = catalog::cyclic(2);
        let a = catalog::constant_model_over(&catalog::cyclic(3), &gamma);
        let k = catalog::constant_model_over(&catalog::cyclic(2), &gamma);
        let invert: Vec<usize> = vec![0, 2, 1];
        let phi = vec![vec![0, 1, 2], invert];
        let data = gamma_semidirect(&a, &k, &phi, None).unwrap();

        // theta = the connected class of K
        let theta = Cocycle::new(&k, vec![0, 1]).unwrap();
        let kernel = twisted_kernel(&data, &theta).unwrap();
        // x trivial: the image equals the embedded theta
        let trivial = Cocycle::trivial(&kernel.twisted);
        let image = u_sigma_phi(&data, &theta, &trivial).unwrap();
        assert_eq!(image, kernel.sigma);

        // every x over the twisted kernel: torsor of the image is the fiber product
        for x in enumerate_cocycles(&kernel.twisted).unwrap() {
            let image = u_sigma_phi(&data, &theta, &x).unwrap();
            let left = torsor_set(&data.product, &image);
            let right = fiber_product(
                gamma_ref(&data),
                &torsor_set(&kernel.twisted, &x),
                &torsor_set(&k, &theta),
            )
            .unwrap();
            assert!(gamma_set_isomorphic(gamma_ref(&data), &left, &right).is_some());
        }
    }

    fn gamma_ref(data: &GammaSemidirect) -> &FiniteGroup {
        data.product.gamma()
    }

    #[test]
    fn u_sigma_phi_raw_rejects_values_off_the_complement() {
        let gamma = catalog::cyclic(2);
        let a = catalog::constant_model_over(&catalog::cyclic(3), &gamma);
        let k = catalog::constant_model_over(&catalog::cyclic(2), &gamma);
        let phi = vec![vec![0, 1, 2], vec![0, 2, 1]];
        let data = gamma_semidirect(&a, &k, &phi, None).unwrap();
        // a cocycle through the kernel instead of the complement
        let bad_sigma = Cocycle::new(&data.product, vec![0, data.pair(1, 1)]);
        if let Ok(sigma) = bad_sigma {
            let theta = Cocycle::new(&k, vec![0, 1]).unwrap();
            let kernel = twisted_kernel(&data, &theta).unwrap();
            let x = Cocycle::trivial(&kernel.twisted);
            let err = u_sigma_phi_raw(&data, &sigma, &x).unwrap_err();
            assert!(matches!(err, Error::SigmaNotFromK { .. }));
        }
    }

    #[test]
    fn place_validation() {
        let gamma = catalog::cyclic(2);
        // q must be a prime power
        assert!(matches!(
            PlaceModel::new(&gamma, "v", 6, vec![0, 1], vec![0], 0, 1),
            Err(Error::InvalidPlace { .. })
        ));
        // tame generator must lie in (and generate) inertia
        assert!(PlaceModel::new(&gamma, "v", 3, vec![0, 1], vec![0], 1, 1).is_err());
        // a good unramified place with full decomposition group
        let v = PlaceModel::new(&gamma, "v", 5, vec![0, 1], vec![0], 0, 1).unwrap();
        assert_eq!(v.unramified_degree(), 2);
        // a ramified place: inertia everything, frobenius trivial coset
        let w = PlaceModel::new(&gamma, "w", 7, vec![0, 1], vec![0, 1], 1, 0).unwrap();
        assert_eq!(w.unramified_degree(), 1);
    }

    #[test]
    fn psi_and_unramifiedness() {
        let gg = constant_over_c2(&catalog::cyclic(2));
        let star = g_star(&gg);
        let gamma = gg.gamma().clone();
        let ramified = PlaceModel::new(&gamma, "w", 7, vec![0, 1], vec![0, 1], 1, 0).unwrap();
        let unramified_place = PlaceModel::new(&gamma, "v", 5, vec![0, 1], vec![0], 0, 1).unwrap();

        let x = Cocycle::new(&gg, vec![0, 1]).unwrap();
        // unramified at v: psi lands on the basepoint
        assert!(is_unramified(&gg, &x, &unramified_place).unwrap());
        assert_eq!(psi_v(&gg, &star, &x, &unramified_place).unwrap(), star.basepoint);
        // ramified at w: psi picks the class of x(tame generator)
        assert!(!is_unramified(&gg, &x, &ramified).unwrap());
        assert_eq!(psi_v(&gg, &star, &x, &ramified).unwrap(), star.class_of[1]);
    }

    #[test]
    fn forcing_conditions_for_constant_c2() {
        let gg = constant_over_c2(&catalog::cyclic(2));
        let gamma = gg.gamma().clone();
        let places = vec![
            PlaceModel::new(&gamma, "v1", 3, vec![0, 1], vec![0], 0, 1).unwrap(),
            PlaceModel::new(&gamma, "v2", 5, vec![0, 1], vec![0], 0, 1).unwrap(),
        ];
        let fc = forcing_conditions(&gg, &places, &[]).unwrap();
        assert_eq!(fc.conditions.len(), 1); // |G| - 1
        assert_eq!(fc.conditions[0].0.label, "v1");

        // excluded set starves the search
        let err = forcing_conditions(&gg, &places, &["v1".into(), "v2".into()]).unwrap_err();
        assert!(matches!(err, Error::InsufficientPlaces { element: 1, .. }));

        // every satisfying cocycle is connected
        for x in enumerate_cocycles(&gg).unwrap() {
            if fc.satisfied_by(&gg, &x).unwrap() {
                assert!(is_connected(&gg, &x));
            }
        }
        // and at least one cocycle satisfies them
        assert!(enumerate_cocycles(&gg)
            .unwrap()
            .iter()
            .any(|x| fc.satisfied_by(&gg, x).unwrap()));
    }

    #[test]
    fn densities() {
        let s3 = catalog::symmetric(3).group;
        assert_eq!(
            degree_one_density(&s3, &Subgroup::full(&s3)).unwrap(),
            Ratio::from(BigInt::from(1))
        );
        let transposition = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let h = Subgroup::new(&s3, vec![0, transposition]).unwrap();
        assert_eq!(
            degree_one_density(&s3, &h).unwrap(),
            Ratio::new(BigInt::from(2), BigInt::from(3))
        );
        let a3_members: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let a3 = Subgroup::new(&s3, a3_members).unwrap();
        assert_eq!(
            degree_one_density(&s3, &a3).unwrap(),
            Ratio::new(BigInt::from(1), BigInt::from(2))
        );
    }

    #[test]
    fn lemma_connectedness_criterion_on_a_sample() {
        // whenever trivially-acting subgroups of Gamma have cocycle images
        // generating G, the torsor is transitive
        let v4 = catalog::klein_four();
        let gg = catalog::constant_model_over(&v4, &catalog::klein_four());
        let gamma_subs = crate::group::subgroups_of(gg.gamma()).unwrap();
        for x in enumerate_cocycles(&gg).unwrap() {
            let mut image_seed = Vec::new();
            for d in &gamma_subs {
                if gg.acts_trivially(d.members()) {
                    image_seed.extend(d.members().iter().map(|&m| x.value(m)));
                }
            }
            let generated = gg.group().closure_of(&image_seed);
            if generated.count_ones() as usize == gg.group().order() {
                assert!(is_connected(&gg, &x));
            }
        }
    }
}
