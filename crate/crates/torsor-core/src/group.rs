//! Finite groups on dense multiplication tables.
//!
//! Elements are identifiers `0..n-1`. Everything here targets the small
//! groups the rest of the crate works with (order at most 128), so tables
//! are stored densely and subgroups are `u128` bitmasks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default cap on group order for the lattice-walking enumerations.
pub const DEFAULT_SUBGROUP_BOUND: u64 = 128;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mul: Vec<usize>, // row-major n x n
    inv: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, by: usize, x: usize) -> usize {
        self.mul(self.mul(by, x), self.inv(by))
    }

    /// `a^k` for any integer exponent; negative exponents go through the inverse.
    pub fn pow(&self, a: usize, k: i64) -> usize {
        let (mut base, mut k) = if k < 0 { (self.inv(a), -k) } else { (a, k) };
        let mut acc = self.identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut ord = 1;
        while x != self.identity {
            x = self.mul(x, a);
            ord += 1;
        }
        ord
    }

    /// lcm of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.n).fold(1u64, |acc, a| num_integer::lcm(acc, self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.n {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Conjugacy classes sorted by their minimal member; the identity's class
    /// (always a singleton) comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = Vec::new();
            let mut stack = vec![start];
            class_of[start] = idx;
            while let Some(x) = stack.pop() {
                members.push(x);
                for g in 0..self.n {
                    let y = self.conj(g, x);
                    if class_of[y] == usize::MAX {
                        class_of[y] = idx;
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes.sort_by_key(|c| c[0]);
        // identity class first regardless of element numbering
        if let Some(pos) = classes.iter().position(|c| c.contains(&self.identity)) {
            let id_class = classes.remove(pos);
            classes.insert(0, id_class);
        }
        classes
    }

    /// Greedy minimal generating sequence, deterministic in element order.
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.closure_mask(0);
        for a in 0..self.n {
            if span & (1u128 << a) == 0 {
                gens.push(a);
                let mut with = members_of_mask(span);
                with.push(a);
                span = self.closure_of(&with);
                if span.count_ones() as usize == self.n {
                    break;
                }
            }
        }
        gens
    }

    fn closure_mask(&self, seed: usize) -> u128 {
        self.closure_of(&[seed])
    }

    /// Bitmask of the subgroup generated by `seed` elements (requires n <= 128).
    pub fn closure_of(&self, seed: &[usize]) -> u128 {
        debug_assert!(self.n <= 128);
        let mut mask: u128 = 1u128 << self.identity;
        let mut queue: Vec<usize> = vec![self.identity];
        let push = |mask: &mut u128, queue: &mut Vec<usize>, x: usize| {
            if *mask & (1u128 << x) == 0 {
                *mask |= 1u128 << x;
                queue.push(x);
            }
        };
        for &s in seed {
            push(&mut mask, &mut queue, s);
        }
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for i in 0..queue.len() {
                let y = queue[i];
                push(&mut mask, &mut queue, self.mul(x, y));
                push(&mut mask, &mut queue, self.mul(y, x));
            }
        }
        mask
    }

    /// Derived series test; used as an independent cross-check for the
    /// structure deciders.
    pub fn is_solvable(&self) -> bool {
        let mut current: Vec<usize> = (0..self.n).collect();
        loop {
            let mut commutators = Vec::new();
            for &a in &current {
                for &b in &current {
                    let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                    commutators.push(c);
                }
            }
            let derived = members_of_mask(self.closure_of(&commutators));
            if derived.len() == 1 {
                return true;
            }
            if derived.len() == current.len() {
                return false;
            }
            current = derived;
        }
    }
}

pub fn members_of_mask(mask: u128) -> Vec<usize> {
    (0..128).filter(|&i| mask & (1u128 << i) != 0).collect()
}

pub fn mask_of_members(members: &[usize]) -> u128 {
    members.iter().fold(0u128, |m, &x| m | (1u128 << x))
}

/// A homomorphism between two concrete groups, stored as an element table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: &FiniteGroup, target: &FiniteGroup, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() {
            return Err(Error::Invalid(format!(
                "hom table has {} entries for a group of order {}",
                map.len(),
                source.order()
            )));
        }
        for &y in &map {
            if y >= target.order() {
                return Err(Error::Invalid(format!("hom image {y} out of range")));
            }
        }
        for a in 0..source.order() {
            for b in 0..source.order() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotAHomomorphism { a, b });
                }
            }
        }
        debug_assert_eq!(map[source.identity()], target.identity());
        Ok(GroupHom {
            source: source.clone(),
            target: target.clone(),
            map,
        })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        self.map.iter().all(|&y| {
            let fresh = !seen[y];
            seen[y] = true;
            fresh
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.iter().all(|&b| b)
    }

    pub fn kernel_members(&self) -> Vec<usize> {
        (0..self.source.order())
            .filter(|&a| self.map[a] == self.target.identity())
            .collect()
    }
}

/// A subgroup of a fixed parent group, stored as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    members: Vec<usize>,
    parent_order: usize,
}

impl Subgroup {
    pub fn new(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Subgroup> {
        members.sort_unstable();
        members.dedup();
        if !members.contains(&parent.identity()) {
            return Err(Error::NotASubgroup {
                witness: parent.identity(),
            });
        }
        let mask = mask_of_members(&members);
        for &a in &members {
            if a >= parent.order() {
                return Err(Error::NotASubgroup { witness: a });
            }
            if mask & (1u128 << parent.inv(a)) == 0 {
                return Err(Error::NotASubgroup { witness: a });
            }
            for &b in &members {
                let c = parent.mul(a, b);
                if mask & (1u128 << c) == 0 {
                    return Err(Error::NotASubgroup { witness: c });
                }
            }
        }
        Ok(Subgroup {
            members,
            parent_order: parent.order(),
        })
    }

    pub fn trivial(parent: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: vec![parent.identity()],
            parent_order: parent.order(),
        }
    }

    pub fn full(parent: &FiniteGroup) -> Subgroup {
        Subgroup {
            members: (0..parent.order()).collect(),
            parent_order: parent.order(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn mask(&self) -> u128 {
        mask_of_members(&self.members)
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    pub fn is_normal_in(&self, parent: &FiniteGroup) -> bool {
        let mask = self.mask();
        for g in 0..parent.order() {
            for &h in &self.members {
                if mask & (1u128 << parent.conj(g, h)) == 0 {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_abelian_in(&self, parent: &FiniteGroup) -> bool {
        for &a in &self.members {
            for &b in &self.members {
                if parent.mul(a, b) != parent.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }
}

/// Validate a raw multiplication table.
///
/// Associativity is checked on all triples up to order 64 and on a fixed
/// deterministic sample above that.
pub fn build_group(table: &[Vec<usize>]) -> Result<FiniteGroup> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NoIdentity);
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Invalid(format!("row {a} has length {}", row.len())));
        }
        for (b, &c) in row.iter().enumerate() {
            if c >= n {
                return Err(Error::NotClosed { a, b });
            }
        }
    }
    let mul: Vec<usize> = table.iter().flatten().copied().collect();
    let at = |a: usize, b: usize| mul[a * n + b];

    let identity = (0..n)
        .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
        .ok_or(Error::NoIdentity)?;

    let mut inv = vec![usize::MAX; n];
    for a in 0..n {
        match (0..n).find(|&b| at(a, b) == identity && at(b, a) == identity) {
            Some(b) => inv[a] = b,
            None => return Err(Error::NoInverse { a }),
        }
    }

    let check = |a: usize, b: usize, c: usize| -> Result<()> {
        if at(at(a, b), c) != at(a, at(b, c)) {
            return Err(Error::NonAssociative { a, b, c });
        }
        Ok(())
    };
    if n <= 64 {
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    check(a, b, c)?;
                }
            }
        }
    } else {
        // deterministic LCG sample of 200k triples
        let mut state: u64 = 0x9e3779b97f4a7c15;
        for _ in 0..200_000 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (state >> 33) as usize % n;
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = (state >> 33) as usize % n;
            check(a, b, c)?;
        }
    }

    Ok(FiniteGroup {
        n,
        mul,
        inv,
        identity,
    })
}

/// A group realized by permutations, remembering each element's action.
#[derive(Debug, Clone)]
pub struct PermutationGroup {
    pub group: FiniteGroup,
    pub degree: usize,
    /// `perms[i]` is the permutation realizing element `i`.
    pub perms: Vec<Perm>,
}

/// Breadth-first closure of permutation generators.
///
/// Element numbering is canonical: the identity is 0, then elements in
/// discovery order (each known element multiplied on the right by the
/// generators, in input order).
pub fn build_group_from_generators(gens: &[Perm]) -> Result<PermutationGroup> {
    let degree = gens
        .first()
        .map(Perm::degree)
        .ok_or_else(|| Error::Invalid("no generators given".into()))?;
    for g in gens {
        if g.degree() != degree {
            return Err(Error::Invalid("generator degrees differ".into()));
        }
    }
    let mut elements: Vec<Perm> = vec![Perm::identity(degree)];
    let mut index: HashMap<Perm, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if !index.contains_key(&next) {
                if elements.len() >= 4096 {
                    return Err(Error::BoundExceeded {
                        what: "generator closure",
                        needed: elements.len() as u64 + 1,
                        bound: 4096,
                    });
                }
                index.insert(next.clone(), elements.len());
                elements.push(next);
            }
        }
    }
    let n = elements.len();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let prod = elements[a].compose(&elements[b]);
            mul[a * n + b] = index[&prod];
        }
    }
    let mut inv = vec![0usize; n];
    for a in 0..n {
        inv[a] = index[&elements[a].inverse()];
    }
    Ok(PermutationGroup {
        group: FiniteGroup {
            n,
            mul,
            inv,
            identity: 0,
        },
        degree,
        perms: elements,
    })
}

/// All subgroups, each exactly once, sorted by (order, member list).
///
/// Grows subgroups by adjoining single elements until no new member sets
/// appear; every subgroup is reachable this way from the trivial one.
pub fn subgroups_of(g: &FiniteGroup) -> Result<Vec<Subgroup>> {
    subgroups_of_bounded(g, DEFAULT_SUBGROUP_BOUND)
}

pub fn subgroups_of_bounded(g: &FiniteGroup, bound: u64) -> Result<Vec<Subgroup>> {
    if g.order() as u64 > bound || g.order() > 128 {
        return Err(Error::BoundExceeded {
            what: "subgroup enumeration",
            needed: g.order() as u64,
            bound: bound.min(128),
        });
    }
    let mut seen: HashMap<u128, ()> = HashMap::new();
    let trivial = 1u128 << g.identity();
    seen.insert(trivial, ());
    let mut queue = vec![trivial];
    let mut head = 0;
    while head < queue.len() {
        let mask = queue[head];
        head += 1;
        let base = members_of_mask(mask);
        for x in 0..g.order() {
            if mask & (1u128 << x) != 0 {
                continue;
            }
            let mut seed = base.clone();
            seed.push(x);
            let grown = g.closure_of(&seed);
            if seen.insert(grown, ()).is_none() {
                queue.push(grown);
            }
        }
    }
    let mut out: Vec<Subgroup> = queue
        .into_iter()
        .map(|mask| Subgroup {
            members: members_of_mask(mask),
            parent_order: g.order(),
        })
        .collect();
    out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
    Ok(out)
}

/// Largest subgroup in which `h` is normal.
pub fn normalizer_of(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    if h.parent_order() != g.order() {
        return Err(Error::NotASubgroup {
            witness: h.members().first().copied().unwrap_or(0),
        });
    }
    let mask = h.mask();
    let members: Vec<usize> = (0..g.order())
        .filter(|&x| h.members().iter().all(|&m| mask & (1u128 << g.conj(x, m)) != 0))
        .collect();
    Subgroup::new(g, members)
}

/// Quotient by a normal subgroup, with the projection.
///
/// Cosets are represented by their minimal element id and numbered in
/// increasing representative order, so the quotient is deterministic.
pub fn quotient_by(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    for x in 0..g.order() {
        for &h in n.members() {
            let c = g.conj(x, h);
            if !n.contains(c) {
                return Err(Error::NotNormal { by: x, moved: h });
            }
        }
    }
    let order = g.order();
    let mut coset_rep = vec![usize::MAX; order];
    let mut reps: Vec<usize> = Vec::new();
    for x in 0..order {
        if coset_rep[x] != usize::MAX {
            continue;
        }
        for &h in n.members() {
            coset_rep[g.mul(x, h)] = x;
        }
        reps.push(x);
    }
    let mut coset_index = vec![usize::MAX; order];
    for (i, &r) in reps.iter().enumerate() {
        for x in 0..order {
            if coset_rep[x] == r {
                coset_index[x] = i;
            }
        }
    }
    let q = reps.len();
    let mut mul = vec![0usize; q * q];
    for a in 0..q {
        for b in 0..q {
            mul[a * q + b] = coset_index[g.mul(reps[a], reps[b])];
        }
    }
    let mut inv = vec![0usize; q];
    for a in 0..q {
        inv[a] = coset_index[g.inv(reps[a])];
    }
    let quotient = FiniteGroup {
        n: q,
        mul,
        inv,
        identity: coset_index[g.identity()],
    };
    let proj = GroupHom::new(g, &quotient, coset_index)?;
    Ok((quotient, proj))
}

/// The automorphism group together with its faithful action on `g`.
#[derive(Debug, Clone)]
pub struct AutomorphismGroup {
    pub group: FiniteGroup,
    /// `tables[i]` is the automorphism realized by element `i`.
    pub tables: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl AutomorphismGroup {
    pub fn index_of(&self, table: &[usize]) -> Option<usize> {
        self.index.get(table).copied()
    }

    pub fn apply(&self, aut: usize, x: usize) -> usize {
        self.tables[aut][x]
    }
}

pub fn automorphisms_of(g: &FiniteGroup) -> Result<AutomorphismGroup> {
    automorphisms_of_bounded(g, DEFAULT_SUBGROUP_BOUND)
}

pub fn automorphisms_of_bounded(g: &FiniteGroup, bound: u64) -> Result<AutomorphismGroup> {
    if g.order() as u64 > bound || g.order() > 128 {
        return Err(Error::BoundExceeded {
            what: "automorphism enumeration",
            needed: g.order() as u64,
            bound: bound.min(128),
        });
    }
    let mut tables: Vec<Vec<usize>> = enumerate_homs(g, g)
        .into_iter()
        .filter(|map| {
            let mut seen = vec![false; g.order()];
            map.iter().all(|&y| {
                let fresh = !seen[y];
                seen[y] = true;
                fresh
            })
        })
        .collect();
    // identity first, the rest in lexicographic order
    tables.sort();
    let id_table: Vec<usize> = (0..g.order()).collect();
    let pos = tables.iter().position(|t| *t == id_table).expect("identity map");
    tables.swap(0, pos);
    let rest = tables.split_off(1);
    let mut sorted_rest = rest;
    sorted_rest.sort();
    tables.extend(sorted_rest);

    let index: HashMap<Vec<usize>, usize> = tables
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();
    let n = tables.len();
    let mut mul = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            let composed: Vec<usize> = (0..g.order()).map(|x| tables[a][tables[b][x]]).collect();
            mul[a * n + b] = index[&composed];
        }
    }
    let mut inv = vec![0usize; n];
    for a in 0..n {
        let mut t = vec![0usize; g.order()];
        for x in 0..g.order() {
            t[tables[a][x]] = x;
        }
        inv[a] = index[&t];
    }
    Ok(AutomorphismGroup {
        group: FiniteGroup {
            n,
            mul,
            inv,
            identity: 0,
        },
        tables,
        index,
    })
}

/// All homomorphisms `source -> target`, as image tables.
///
/// Backtracks over generator images; candidates are pruned by element order.
pub fn enumerate_homs(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = source.generating_sequence();
    if gens.is_empty() {
        return vec![vec![target.identity(); source.order()]];
    }
    // express every source element as a word in the generators
    let words = word_table(source, &gens);
    let mut out = Vec::new();
    let mut images = vec![0usize; gens.len()];
    search_homs(source, target, &gens, &words, 0, &mut images, &mut out);
    out.sort();
    out
}

/// For each element: None for identity, or (previous element, generator index).
fn word_table(g: &FiniteGroup, gens: &[usize]) -> Vec<Option<(usize, usize)>> {
    let mut words: Vec<Option<(usize, usize)>> = vec![None; g.order()];
    let mut known = vec![false; g.order()];
    known[g.identity()] = true;
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (gi, &gen) in gens.iter().enumerate() {
            let y = g.mul(x, gen);
            if !known[y] {
                known[y] = true;
                words[y] = Some((x, gi));
                queue.push(y);
            }
        }
    }
    debug_assert!(known.iter().all(|&k| k));
    words
}

fn search_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    gens: &[usize],
    words: &[Option<(usize, usize)>],
    depth: usize,
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == gens.len() {
        if let Some(map) = extend_to_map(source, target, words, images) {
            out.push(map);
        }
        return;
    }
    let src_order = source.element_order(gens[depth]);
    for candidate in 0..target.order() {
        if src_order % target.element_order(candidate) == 0 {
            images[depth] = candidate;
            search_homs(source, target, gens, words, depth + 1, images, out);
        }
    }
}

fn extend_to_map(
    source: &FiniteGroup,
    target: &FiniteGroup,
    words: &[Option<(usize, usize)>],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; source.order()];
    map[source.identity()] = target.identity();
    // resolve in BFS order so prefixes are always known
    let mut order: Vec<usize> = (0..source.order()).collect();
    order.sort_by_key(|&x| word_depth(words, x));
    for &x in &order {
        if let Some((prev, gi)) = words[x] {
            map[x] = target.mul(map[prev], images[gi]);
        }
    }
    for a in 0..source.order() {
        for b in 0..source.order() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}

fn word_depth(words: &[Option<(usize, usize)>], mut x: usize) -> usize {
    let mut d = 0;
    while let Some((prev, _)) = words[x] {
        x = prev;
        d += 1;
    }
    d
}

/// A semidirect product `A x| K` together with the canonical injections.
#[derive(Debug, Clone)]
pub struct SemidirectProduct {
    pub group: FiniteGroup,
    pub embed_left: GroupHom,
    pub embed_right: GroupHom,
}

impl SemidirectProduct {
    /// Pair `(a, k)` as an element id of the product.
    pub fn pair(&self, a: usize, k: usize) -> usize {
        let na = self.embed_left.source.order();
        k * na + a
    }

    pub fn unpair(&self, x: usize) -> (usize, usize) {
        let na = self.embed_left.source.order();
        (x % na, x / na)
    }
}

/// Build `A x| K` from the action `phi`: one automorphism table of `A` per
/// element of `K`. Multiplication is `(a1,k1)(a2,k2) = (a1 phi(k1)(a2), k1 k2)`.
pub fn semidirect(a: &FiniteGroup, k: &FiniteGroup, phi: &[Vec<usize>]) -> Result<SemidirectProduct> {
    if phi.len() != k.order() {
        return Err(Error::Invalid(format!(
            "phi has {} tables for |K| = {}",
            phi.len(),
            k.order()
        )));
    }
    for (i, table) in phi.iter().enumerate() {
        if !is_automorphism_table(a, table) {
            return Err(Error::NotIntoAut { at: i });
        }
    }
    for k1 in 0..k.order() {
        for k2 in 0..k.order() {
            let composed: Vec<usize> = (0..a.order()).map(|x| phi[k1][phi[k2][x]]).collect();
            if composed != phi[k.mul(k1, k2)] {
                return Err(Error::NotAHomomorphism { a: k1, b: k2 });
            }
        }
    }
    let na = a.order();
    let nk = k.order();
    let n = na * nk;
    let pair = |x: usize, y: usize| y * na + x;
    let mut mul = vec![0usize; n * n];
    for a1 in 0..na {
        for k1 in 0..nk {
            for a2 in 0..na {
                for k2 in 0..nk {
                    let left = pair(a1, k1);
                    let right = pair(a2, k2);
                    mul[left * n + right] = pair(a.mul(a1, phi[k1][a2]), k.mul(k1, k2));
                }
            }
        }
    }
    let identity = pair(a.identity(), k.identity());
    let mut inv = vec![usize::MAX; n];
    for x in 0..n {
        for y in 0..n {
            if mul[x * n + y] == identity && mul[y * n + x] == identity {
                inv[x] = y;
                break;
            }
        }
    }
    let group = FiniteGroup { n, mul, inv, identity };
    let embed_left = GroupHom::new(a, &group, (0..na).map(|x| pair(x, k.identity())).collect())?;
    let embed_right = GroupHom::new(k, &group, (0..nk).map(|y| pair(a.identity(), y)).collect())?;
    Ok(SemidirectProduct {
        group,
        embed_left,
        embed_right,
    })
}

pub fn is_automorphism_table(g: &FiniteGroup, table: &[usize]) -> bool {
    if table.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; g.order()];
    for &y in table {
        if y >= g.order() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if table[g.mul(a, b)] != g.mul(table[a], table[b]) {
                return false;
            }
        }
    }
    true
}

/// Direct product with pair numbering `(a, b) -> b * |A| + a`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let trivial_phi = vec![(0..a.order()).collect::<Vec<usize>>(); b.order()];
    semidirect(a, b, &trivial_phi).expect("trivial action is valid").group
}

/// Realize a subgroup as a group of its own, with the inclusion hom.
///
/// Members keep their relative order, so the numbering is deterministic.
pub fn subgroup_as_group(g: &FiniteGroup, h: &Subgroup) -> (FiniteGroup, GroupHom) {
    let members = h.members();
    let mut back = vec![usize::MAX; g.order()];
    for (i, &m) in members.iter().enumerate() {
        back[m] = i;
    }
    let n = members.len();
    let mut mul = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            mul[i * n + j] = back[g.mul(members[i], members[j])];
        }
    }
    let mut inv = vec![0usize; n];
    for i in 0..n {
        inv[i] = back[g.inv(members[i])];
    }
    let sub = FiniteGroup {
        n,
        mul,
        inv,
        identity: back[g.identity()],
    };
    let embed = GroupHom::new(&sub, g, members.to_vec()).expect("inclusion is a hom");
    (sub, embed)
}

/// Search for an isomorphism, returned as an image table.
pub fn find_isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    enumerate_isomorphisms_until(a, b, &mut |_| true)
}

/// Backtracking isomorphism search; `accept` can reject candidates (used for
/// equivariance constraints). Returns the first accepted isomorphism.
pub fn enumerate_isomorphisms_until(
    a: &FiniteGroup,
    b: &FiniteGroup,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let gens = a.generating_sequence();
    let words = word_table(a, &gens);
    let mut images = vec![0usize; gens.len()];
    fn rec(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        words: &[Option<(usize, usize)>],
        depth: usize,
        images: &mut Vec<usize>,
        accept: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Option<Vec<usize>> {
        if depth == gens.len() {
            let map = extend_to_map(a, b, words, images)?;
            let mut seen = vec![false; b.order()];
            for &y in &map {
                if seen[y] {
                    return None;
                }
                seen[y] = true;
            }
            if accept(&map) {
                return Some(map);
            }
            return None;
        }
        let ord = a.element_order(gens[depth]);
        for candidate in 0..b.order() {
            if b.element_order(candidate) == ord {
                images[depth] = candidate;
                if let Some(found) = rec(a, b, gens, words, depth + 1, images, accept) {
                    return Some(found);
                }
            }
        }
        None
    }
    if gens.is_empty() {
        let map = vec![b.identity(); 1];
        return accept(&map).then_some(map);
    }
    rec(a, b, &gens, &words, 0, &mut images, accept)
}
