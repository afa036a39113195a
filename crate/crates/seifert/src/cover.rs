//! Smooth surface covers of closed 2-orbifolds, with verifiable
//! certificates.
//!
//! A certificate presents a finite cover through a transitive permutation
//! representation of the base orbifold group: one permutation pair per
//! handle of an orientable base or one permutation per crosscap of a
//! nonorientable one, plus one permutation per cone point. The cover is
//! smooth exactly when every cone permutation moves every point in cycles
//! of full length, so each cone angle unwinds completely upstairs.
//!
//! [`smooth_cover_search`] finds a certificate at the smallest feasible
//! degree, [`verify_certificate`] rechecks one from its raw data alone, and
//! [`galois_closure`] regularizes one into the left-translation action of
//! the deck group it generates.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::orbifold::{BadOrbifold, Orbifold2D};
use crate::perm::Permutation;
use crate::{rational, Rational};

/// Group closures abort once they have seen this many distinct elements.
pub const DEFAULT_GROUP_CAP: usize = 20_160;

/// Default bound on searched degrees, as a multiple of the lcm of the cone
/// orders.
pub const DEFAULT_MAX_MULT: u32 = 12;

/// Above this many solutions the commutator-equation solver steps aside and
/// the slot falls back to plain enumeration.
const CONJUGATOR_CAP: u128 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    /// Teardrops and spindles admit no smooth cover at any degree.
    #[error("the {0} orbifold has no smooth cover at any degree")]
    BadOrbifold(BadOrbifold),
    #[error("no smooth cover certificate found at degrees up to {degree_bound}")]
    NotFound { degree_bound: i64 },
    #[error("the orbifold is already orientable")]
    AlreadyOrientable,
    #[error("generated deck group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error(
        "certificate is not regular: its permutations generate a group of \
         order {order}, not {degree}"
    )]
    NotRegular { order: usize, degree: usize },
}

/// First condition a certificate failed during verification.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CertificateDefect {
    #[error("certificate shape does not match the orbifold: {detail}")]
    ShapeMismatch { detail: String },
    #[error("a permutation acts on {found} points but the certificate degree is {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("cone permutation {index} must move every point in cycles of length {order}")]
    ConeCycleType { index: usize, order: i64 },
    #[error("the defining relation does not evaluate to the identity")]
    RelationNotIdentity,
    #[error("the permutations do not act transitively")]
    NotTransitive,
    #[error("cover orientability flag should be {expected}")]
    OrientabilityFlag { expected: bool },
    #[error(
        "declared cover Euler characteristic {declared} differs from \
         degree * base Euler characteristic = {expected}"
    )]
    EulerMismatch { expected: Rational, declared: i64 },
}

/// A smooth-cover certificate: a transitive permutation representation of
/// the base orbifold group in which every cone generator acts with all
/// cycles of length exactly the cone order.
///
/// Serializes with permutations written as lists of disjoint cycles, fixed
/// points omitted and the identity written as an empty list; the explicit
/// `degree` field keeps the encoding re-parseable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverCertificate {
    pub degree: usize,
    /// One pair per handle of an orientable base.
    pub handle_perms: Vec<(Permutation, Permutation)>,
    /// One permutation per crosscap of a nonorientable base.
    pub crosscap_perms: Vec<Permutation>,
    /// One permutation per cone point, in the order of the cone list.
    pub cone_perms: Vec<Permutation>,
    /// Genus of the covering surface when orientable, crosscap count
    /// otherwise.
    pub cover_genus: i64,
    pub cover_orientable: bool,
}

impl CoverCertificate {
    /// All permutations of the representation: handle pairs flattened,
    /// then crosscaps, then cones.
    pub fn generators(&self) -> Vec<&Permutation> {
        let mut gens = Vec::new();
        for (a, b) in &self.handle_perms {
            gens.push(a);
            gens.push(b);
        }
        gens.extend(self.crosscap_perms.iter());
        gens.extend(self.cone_perms.iter());
        gens
    }

    /// Value of the defining relation word of the base orbifold group:
    /// the product of handle commutators or crosscap squares, followed by
    /// the cone permutations. Identity for a valid certificate.
    pub fn relation_product(&self) -> Permutation {
        let mut acc = Permutation::identity(self.degree);
        for (a, b) in &self.handle_perms {
            acc = acc.compose(&commutator(a, b));
        }
        for x in &self.crosscap_perms {
            acc = acc.compose(&x.compose(x));
        }
        for s in &self.cone_perms {
            acc = acc.compose(s);
        }
        acc
    }

    pub fn base_orientable(&self) -> bool {
        self.crosscap_perms.is_empty()
    }

    /// Euler characteristic of the covering surface implied by the genus
    /// and orientability fields.
    pub fn cover_euler(&self) -> i64 {
        if self.cover_orientable {
            2 - 2 * self.cover_genus
        } else {
            2 - self.cover_genus
        }
    }

    pub fn is_transitive(&self) -> bool {
        acts_transitively(self.degree, &self.generators())
    }
}

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.compose(b).compose(&a.inverse()).compose(&b.inverse())
}

fn acts_transitively(degree: usize, gens: &[&Permutation]) -> bool {
    if degree == 0 {
        return false;
    }
    let mut seen = vec![false; degree];
    seen[0] = true;
    let mut count = 1;
    let mut stack = vec![0usize];
    while let Some(pt) = stack.pop() {
        for g in gens {
            let next = g.apply(pt);
            if !seen[next] {
                seen[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count == degree
}

/// Whether the covering surface a certificate presents is orientable.
///
/// Crosscap generators reverse local orientation while handle and cone
/// generators preserve it, so the cover is orientable exactly when no
/// signed walk returns to its starting point with reversed sign.
fn computed_cover_orientable(c: &CoverCertificate) -> bool {
    if c.crosscap_perms.is_empty() || c.degree == 0 {
        return true;
    }
    let mut signed: Vec<(&Permutation, usize)> = Vec::new();
    for (a, b) in &c.handle_perms {
        signed.push((a, 0));
        signed.push((b, 0));
    }
    for x in &c.crosscap_perms {
        signed.push((x, 1));
    }
    for s in &c.cone_perms {
        signed.push((s, 0));
    }
    let mut seen = vec![false; 2 * c.degree];
    seen[0] = true;
    let mut stack = vec![(0usize, 0usize)];
    while let Some((pt, sg)) = stack.pop() {
        for (g, flip) in &signed {
            let npt = g.apply(pt);
            let nsg = sg ^ flip;
            if !seen[2 * npt + nsg] {
                seen[2 * npt + nsg] = true;
                stack.push((npt, nsg));
            }
        }
    }
    !seen[1]
}

/// Recheck a certificate against its base orbifold from the raw data
/// alone. Reports the first failed condition.
pub fn verify_certificate(o: &Orbifold2D, c: &CoverCertificate) -> Result<(), CertificateDefect> {
    let shape = |detail: String| Err(CertificateDefect::ShapeMismatch { detail });
    if c.degree == 0 {
        return shape("degree must be at least 1".into());
    }
    if o.orientable() {
        if !c.crosscap_perms.is_empty() {
            return shape("an orientable base has no crosscap permutations".into());
        }
        if c.handle_perms.len() != o.genus() as usize {
            return shape(format!(
                "expected {} handle pairs, found {}",
                o.genus(),
                c.handle_perms.len()
            ));
        }
    } else {
        if !c.handle_perms.is_empty() {
            return shape("a nonorientable base has no handle permutations".into());
        }
        if c.crosscap_perms.len() != o.genus() as usize {
            return shape(format!(
                "expected {} crosscap permutations, found {}",
                o.genus(),
                c.crosscap_perms.len()
            ));
        }
    }
    if c.cone_perms.len() != o.cone_orders().len() {
        return shape(format!(
            "expected {} cone permutations, found {}",
            o.cone_orders().len(),
            c.cone_perms.len()
        ));
    }
    if c.cover_genus < 0 {
        return shape("cover genus cannot be negative".into());
    }
    if !c.cover_orientable && c.cover_genus == 0 {
        return shape("a nonorientable cover needs at least one crosscap".into());
    }
    for g in c.generators() {
        if g.degree() != c.degree {
            return Err(CertificateDefect::DegreeMismatch {
                expected: c.degree,
                found: g.degree(),
            });
        }
    }
    for (index, (s, &order)) in c.cone_perms.iter().zip(o.cone_orders()).enumerate() {
        if !s.all_cycles_have_length(order) {
            return Err(CertificateDefect::ConeCycleType { index, order });
        }
    }
    if !c.relation_product().is_identity() {
        return Err(CertificateDefect::RelationNotIdentity);
    }
    if !c.is_transitive() {
        return Err(CertificateDefect::NotTransitive);
    }
    let expected = computed_cover_orientable(c);
    if c.cover_orientable != expected {
        return Err(CertificateDefect::OrientabilityFlag { expected });
    }
    let expected_euler = rational(c.degree as i64, 1) * o.euler_characteristic();
    if rational(c.cover_euler(), 1) != expected_euler {
        return Err(CertificateDefect::EulerMismatch {
            expected: expected_euler,
            declared: c.cover_euler(),
        });
    }
    Ok(())
}

/// Search for a smooth cover certificate of minimal feasible degree.
///
/// Degrees run over multiples of the lcm of the cone orders up to
/// `max_mult` times the lcm. The backtracking enumeration is deterministic:
/// `seed` 0 fills every slot in ascending image order, any other seed
/// shuffles the per-slot candidate alphabets. Teardrops and spindles are
/// rejected up front; see [`smooth_cover_search_exhaustive`] for the
/// search-only route.
pub fn smooth_cover_search(
    o: &Orbifold2D,
    max_mult: u32,
    seed: u64,
) -> Result<CoverCertificate, CoverError> {
    if let Some(bad) = o.bad_orbifold() {
        return Err(CoverError::BadOrbifold(bad));
    }
    search_degrees(o, max_mult, seed)
}

/// The same search without the closed-form bad-base rejection, so
/// teardrops and spindles run all the way to the degree bound and come
/// back `NotFound`. Public so the two rejection routes can be checked
/// against each other.
pub fn smooth_cover_search_exhaustive(
    o: &Orbifold2D,
    max_mult: u32,
    seed: u64,
) -> Result<CoverCertificate, CoverError> {
    search_degrees(o, max_mult, seed)
}

fn search_degrees(o: &Orbifold2D, max_mult: u32, seed: u64) -> Result<CoverCertificate, CoverError> {
    let max_mult = max_mult.max(1) as i64;
    let step: i64 = o
        .cone_orders()
        .iter()
        .fold(1, |acc, &p| num::integer::lcm(acc, p));
    for mult in 1..=max_mult {
        let degree = step * mult;
        if !degree_feasible(o, degree) {
            continue;
        }
        if let Some(cert) = search_degree(o, degree as usize, seed) {
            return Ok(cert);
        }
    }
    Err(CoverError::NotFound {
        degree_bound: step * max_mult,
    })
}

/// Necessary conditions for a smooth degree-`degree` cover: the cover
/// Euler characteristic degree * chi_orb must be an integer at most 2 and
/// even over an orientable base, and the forced cone cycle types must
/// multiply to an even permutation, since the relation writes their
/// product as a product of commutators or squares.
fn degree_feasible(o: &Orbifold2D, degree: i64) -> bool {
    let chi_cover = rational(degree, 1) * o.euler_characteristic();
    if !chi_cover.is_integer() {
        return false;
    }
    let chi = chi_cover.to_integer();
    if chi > 2 {
        return false;
    }
    if o.orientable() && chi % 2 != 0 {
        return false;
    }
    let mut transposition_count = 0i64;
    for &p in o.cone_orders() {
        transposition_count += (p - 1) * (degree / p);
    }
    transposition_count % 2 == 0
}

fn search_degree(o: &Orbifold2D, degree: usize, seed: u64) -> Option<CoverCertificate> {
    let cone_count = o.cone_orders().len();
    let free_count = if o.orientable() {
        2 * o.genus() as usize
    } else {
        o.genus() as usize
    };
    let middle_count = cone_count.saturating_sub(2);
    let mut alphabets: Vec<Vec<u32>> = (0..free_count + middle_count)
        .map(|_| (0..degree as u32).collect())
        .collect();
    if seed != 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for alphabet in &mut alphabets {
            alphabet.shuffle(&mut rng);
        }
    }
    let mut search = DegreeSearch {
        o,
        degree,
        free_count,
        alphabets,
        free: Vec::new(),
        cones: Vec::new(),
    };
    if search.assign_free(0) {
        Some(certify(o, degree, search.free, search.cones))
    } else {
        None
    }
}

struct DegreeSearch<'a> {
    o: &'a Orbifold2D,
    degree: usize,
    free_count: usize,
    alphabets: Vec<Vec<u32>>,
    free: Vec<Permutation>,
    cones: Vec<Permutation>,
}

impl DegreeSearch<'_> {
    fn assign_free(&mut self, idx: usize) -> bool {
        if idx == self.free_count {
            return self.assign_cones();
        }
        // On the closing slot of the last handle pair over a one-cone
        // orientable base the relation pins the commutator, so only the
        // solutions of that equation need to be tried.
        if self.o.orientable() && self.o.cone_orders().len() == 1 && idx == self.free_count - 1 {
            if let Some(hit) = self.finish_last_handle(idx) {
                return hit;
            }
        }
        let alphabet = self.alphabets[idx].clone();
        for_each_perm(self.degree, &alphabet, &mut |p| {
            self.free.push(p.clone());
            let hit = self.assign_free(idx + 1);
            if !hit {
                self.free.pop();
            }
            hit
        })
    }

    /// Enumerate only the `b` with `[a, b]` equal to the value the relation
    /// forces, in image order. `None` means the candidate set was too large
    /// and the slot should fall back to plain enumeration.
    fn finish_last_handle(&mut self, idx: usize) -> Option<bool> {
        let pinned = canonical_typed(self.degree, self.o.cone_orders()[0]);
        let mut prefix = Permutation::identity(self.degree);
        for pair in 0..(self.free_count / 2).saturating_sub(1) {
            prefix = prefix.compose(&commutator(&self.free[2 * pair], &self.free[2 * pair + 1]));
        }
        let a = self.free[idx - 1].clone();
        let forced = prefix.inverse().compose(&pinned.inverse());
        // [a, b] = forced  <=>  b (a^-1) b^-1 = a^-1 forced
        let src = a.inverse();
        let dst = src.compose(&forced);
        let candidates = conjugators(&src, &dst)?;
        for b in candidates {
            self.free.push(b);
            if self.assign_cones() {
                return Some(true);
            }
            self.free.pop();
        }
        Some(false)
    }

    fn assign_cones(&mut self) -> bool {
        let orders = self.o.cone_orders();
        let mut prefix = Permutation::identity(self.degree);
        if self.o.orientable() {
            for pair in 0..self.free.len() / 2 {
                prefix =
                    prefix.compose(&commutator(&self.free[2 * pair], &self.free[2 * pair + 1]));
            }
        } else {
            for x in &self.free {
                prefix = prefix.compose(&x.compose(x));
            }
        }
        match orders.len() {
            0 => prefix.is_identity() && self.complete(),
            1 => {
                // The relation determines the single cone permutation; it
                // must land exactly on the pinned representative.
                let required = prefix.inverse();
                if required != canonical_typed(self.degree, orders[0]) {
                    return false;
                }
                self.cones.push(required);
                let hit = self.complete();
                if !hit {
                    self.cones.pop();
                }
                hit
            }
            _ => {
                // Conjugating a solution moves the first cone permutation to
                // any representative of its cycle type, so pin it.
                let pinned = canonical_typed(self.degree, orders[0]);
                let acc = prefix.compose(&pinned);
                self.cones.push(pinned);
                let hit = self.assign_middle(1, acc);
                if !hit {
                    self.cones.pop();
                }
                hit
            }
        }
    }

    fn assign_middle(&mut self, i: usize, acc: Permutation) -> bool {
        let orders = self.o.cone_orders();
        let last = orders.len() - 1;
        if i == last {
            // The relation determines the final cone permutation; only its
            // cycle type remains to be checked.
            let forced = acc.inverse();
            if !forced.all_cycles_have_length(orders[last]) {
                return false;
            }
            self.cones.push(forced);
            let hit = self.complete();
            if !hit {
                self.cones.pop();
            }
            return hit;
        }
        let alphabet = self.alphabets[self.free_count + (i - 1)].clone();
        for_each_typed(self.degree, orders[i], &alphabet, &mut |s| {
            self.cones.push(s.clone());
            let hit = self.assign_middle(i + 1, acc.compose(s));
            if !hit {
                self.cones.pop();
            }
            hit
        })
    }

    /// Transitivity is the one condition deferred to complete assignments.
    fn complete(&mut self) -> bool {
        let gens: Vec<&Permutation> = self.free.iter().chain(self.cones.iter()).collect();
        acts_transitively(self.degree, &gens)
    }
}

fn certify(
    o: &Orbifold2D,
    degree: usize,
    free: Vec<Permutation>,
    cones: Vec<Permutation>,
) -> CoverCertificate {
    let (handle_perms, crosscap_perms) = if o.orientable() {
        (
            free.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect(),
            Vec::new(),
        )
    } else {
        (Vec::new(), free)
    };
    let chi_cover = rational(degree as i64, 1) * o.euler_characteristic();
    debug_assert!(chi_cover.is_integer());
    let chi = chi_cover.to_integer();
    let mut cert = CoverCertificate {
        degree,
        handle_perms,
        crosscap_perms,
        cone_perms: cones,
        cover_genus: 0,
        cover_orientable: true,
    };
    cert.cover_orientable = computed_cover_orientable(&cert);
    cert.cover_genus = if cert.cover_orientable {
        (2 - chi) / 2
    } else {
        2 - chi
    };
    cert
}

/// The identity-first representative of the full-cycle type: consecutive
/// blocks of `cycle_len` points, each rotated forward by one.
fn canonical_typed(degree: usize, cycle_len: i64) -> Permutation {
    let p = (cycle_len.max(1) as usize).min(degree.max(1));
    debug_assert_eq!(degree % p, 0);
    let images = (0..degree)
        .map(|i| {
            let block = i - i % p;
            (block + (i - block + 1) % p) as u32
        })
        .collect();
    Permutation::from_images(images).expect("block cycles form a bijection")
}

/// Enumerate every permutation of `degree` points, choosing images position
/// by position in `alphabet` order; the visitor returns true to stop.
fn for_each_perm(
    degree: usize,
    alphabet: &[u32],
    visit: &mut dyn FnMut(&Permutation) -> bool,
) -> bool {
    let mut state = PermEnumerator {
        degree,
        alphabet,
        images: Vec::with_capacity(degree),
        used: vec![false; degree],
    };
    state.step(visit)
}

struct PermEnumerator<'a> {
    degree: usize,
    alphabet: &'a [u32],
    images: Vec<u32>,
    used: Vec<bool>,
}

impl PermEnumerator<'_> {
    fn step(&mut self, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
        if self.images.len() == self.degree {
            let p = Permutation::from_images(self.images.clone())
                .expect("enumerated images form a bijection");
            return visit(&p);
        }
        for k in 0..self.alphabet.len() {
            let img = self.alphabet[k];
            if self.used[img as usize] {
                continue;
            }
            self.used[img as usize] = true;
            self.images.push(img);
            if self.step(visit) {
                return true;
            }
            self.images.pop();
            self.used[img as usize] = false;
        }
        false
    }
}

/// Enumerate every permutation of `degree` points whose cycles all have
/// length exactly `cycle_len`. Cycles are anchored at the least unplaced
/// point and successors tried in `alphabet` order, so the first emission
/// under the natural alphabet is the canonical block representative.
fn for_each_typed(
    degree: usize,
    cycle_len: i64,
    alphabet: &[u32],
    visit: &mut dyn FnMut(&Permutation) -> bool,
) -> bool {
    let p = cycle_len.max(1) as usize;
    if degree == 0 || degree % p != 0 {
        return false;
    }
    let mut state = TypedEnumerator {
        degree,
        cycle_len: p,
        alphabet,
        images: vec![u32::MAX; degree],
        in_cycle: vec![false; degree],
        placed: 0,
    };
    state.open_cycle(visit)
}

struct TypedEnumerator<'a> {
    degree: usize,
    cycle_len: usize,
    alphabet: &'a [u32],
    images: Vec<u32>,
    in_cycle: Vec<bool>,
    placed: usize,
}

impl TypedEnumerator<'_> {
    fn open_cycle(&mut self, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
        if self.placed == self.degree {
            let p = Permutation::from_images(self.images.clone())
                .expect("complete cycle cover forms a bijection");
            return visit(&p);
        }
        let anchor = (0..self.degree)
            .find(|&i| !self.in_cycle[i])
            .expect("an unplaced point exists");
        self.in_cycle[anchor] = true;
        self.placed += 1;
        let hit = self.extend(anchor, anchor, 1, visit);
        self.placed -= 1;
        self.in_cycle[anchor] = false;
        hit
    }

    fn extend(
        &mut self,
        start: usize,
        prev: usize,
        len: usize,
        visit: &mut dyn FnMut(&Permutation) -> bool,
    ) -> bool {
        if len == self.cycle_len {
            self.images[prev] = start as u32;
            let hit = self.open_cycle(visit);
            self.images[prev] = u32::MAX;
            return hit;
        }
        for k in 0..self.alphabet.len() {
            let img = self.alphabet[k] as usize;
            if self.in_cycle[img] {
                continue;
            }
            self.in_cycle[img] = true;
            self.placed += 1;
            self.images[prev] = img as u32;
            if self.extend(start, img, len + 1, visit) {
                return true;
            }
            self.images[prev] = u32::MAX;
            self.placed -= 1;
            self.in_cycle[img] = false;
        }
        false
    }
}

/// Every `b` with `b src b^-1 = dst`, sorted by image vector, or `None`
/// when there are more than `CONJUGATOR_CAP` of them.
fn conjugators(src: &Permutation, dst: &Permutation) -> Option<Vec<Permutation>> {
    if src.cycle_type() != dst.cycle_type() {
        return Some(Vec::new());
    }
    // count = centralizer order = prod over lengths l with multiplicity m
    // of m! * l^m
    let mut multiplicity: HashMap<usize, u128> = HashMap::new();
    for len in src.cycle_type() {
        *multiplicity.entry(len).or_insert(0) += 1;
    }
    let mut count: u128 = 1;
    for (&len, &m) in &multiplicity {
        for j in 1..=m {
            count = count.checked_mul(j)?.checked_mul(len as u128)?;
            if count > CONJUGATOR_CAP {
                return None;
            }
        }
    }
    let src_cycles = full_cycles(src);
    let dst_cycles = full_cycles(dst);
    let mut images = vec![u32::MAX; src.degree()];
    let mut used = vec![false; dst_cycles.len()];
    let mut out = Vec::new();
    assemble_conjugators(&src_cycles, &dst_cycles, 0, &mut used, &mut images, &mut out);
    out.sort_by(|a, b| a.images().cmp(b.images()));
    Some(out)
}

fn assemble_conjugators(
    src_cycles: &[Vec<usize>],
    dst_cycles: &[Vec<usize>],
    i: usize,
    used: &mut [bool],
    images: &mut [u32],
    out: &mut Vec<Permutation>,
) {
    if i == src_cycles.len() {
        out.push(
            Permutation::from_images(images.to_vec()).expect("cycle matching forms a bijection"),
        );
        return;
    }
    let s = &src_cycles[i];
    for j in 0..dst_cycles.len() {
        if used[j] || dst_cycles[j].len() != s.len() {
            continue;
        }
        used[j] = true;
        let t = &dst_cycles[j];
        for r in 0..t.len() {
            for k in 0..s.len() {
                images[s[k]] = t[(k + r) % t.len()] as u32;
            }
            assemble_conjugators(src_cycles, dst_cycles, i + 1, used, images, out);
        }
        for k in 0..s.len() {
            images[s[k]] = u32::MAX;
        }
        used[j] = false;
    }
}

/// All cycles of a permutation, fixed points included, 0-indexed.
fn full_cycles(p: &Permutation) -> Vec<Vec<usize>> {
    let d = p.degree();
    let mut seen = vec![false; d];
    let mut out = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = p.apply(start);
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = p.apply(x);
        }
        out.push(cycle);
    }
    out
}

/// Close the certificate's permutations into the group they generate.
/// Elements come back in breadth-first discovery order starting from the
/// identity, together with an index by image vector.
fn group_closure(
    degree: usize,
    gens: &[&Permutation],
    cap: usize,
) -> Result<(Vec<Permutation>, HashMap<Vec<u32>, usize>), CoverError> {
    let identity = Permutation::identity(degree);
    let mut index = HashMap::new();
    index.insert(identity.images().to_vec(), 0);
    let mut elements = vec![identity];
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in gens {
            let next = current.compose(g);
            if !index.contains_key(next.images()) {
                if elements.len() == cap {
                    return Err(CoverError::GroupTooLarge { cap });
                }
                index.insert(next.images().to_vec(), elements.len());
                elements.push(next);
            }
        }
    }
    Ok((elements, index))
}

/// Order of the group a certificate generates, when the certificate is
/// regular; `NotRegular` carries the order otherwise.
pub fn deck_group_order(c: &CoverCertificate) -> Result<usize, CoverError> {
    let (elements, _) = group_closure(c.degree, &c.generators(), DEFAULT_GROUP_CAP)?;
    if elements.len() == c.degree {
        Ok(elements.len())
    } else {
        Err(CoverError::NotRegular {
            order: elements.len(),
            degree: c.degree,
        })
    }
}

/// Regularize a certificate with the default group cap.
pub fn galois_closure(c: &CoverCertificate) -> Result<CoverCertificate, CoverError> {
    galois_closure_with_cap(c, DEFAULT_GROUP_CAP)
}

/// Close the certificate's permutations into the full deck group G and
/// replace each one by its left-translation action on G. The result is a
/// regular smooth cover of the same base orbifold. The input must verify
/// against its base.
pub fn galois_closure_with_cap(
    c: &CoverCertificate,
    cap: usize,
) -> Result<CoverCertificate, CoverError> {
    let (elements, index) = group_closure(c.degree, &c.generators(), cap)?;
    let order = elements.len();
    let translate = |g: &Permutation| -> Permutation {
        let images = elements
            .iter()
            .map(|e| {
                let product = g.compose(e);
                index[product.images()] as u32
            })
            .collect();
        Permutation::from_images(images).expect("left translation permutes the group")
    };
    let handle_perms = c
        .handle_perms
        .iter()
        .map(|(a, b)| (translate(a), translate(b)))
        .collect();
    let crosscap_perms = c.crosscap_perms.iter().map(&translate).collect();
    let cone_perms = c.cone_perms.iter().map(&translate).collect();
    // The base orbifold Euler characteristic implied by the input carries
    // over: chi(new cover) = |G| * chi(old cover) / old degree, an integer
    // because the old degree divides |G|.
    let chi_rat = rational(order as i64, 1) * rational(c.cover_euler(), c.degree as i64);
    debug_assert!(chi_rat.is_integer());
    let chi = chi_rat.to_integer();
    let mut out = CoverCertificate {
        degree: order,
        handle_perms,
        crosscap_perms,
        cone_perms,
        cover_genus: 0,
        cover_orientable: true,
    };
    out.cover_orientable = computed_cover_orientable(&out);
    out.cover_genus = if out.cover_orientable {
        (2 - chi) / 2
    } else {
        2 - chi
    };
    Ok(out)
}

/// The orientation double cover of a nonorientable 2-orbifold: k crosscaps
/// lift to an orientable surface of genus k - 1, and every cone point
/// lifts to two of the same order.
pub fn orientation_double_cover(o: &Orbifold2D) -> Result<Orbifold2D, CoverError> {
    if o.orientable() {
        return Err(CoverError::AlreadyOrientable);
    }
    let mut cones = Vec::with_capacity(2 * o.cone_orders().len());
    for &p in o.cone_orders() {
        cones.push(p);
        cones.push(p);
    }
    Ok(Orbifold2D::new(o.genus() - 1, true, cones).expect("double cover data is valid"))
}

#[derive(Serialize, Deserialize)]
struct CertificateWire {
    degree: usize,
    handle_perms: Vec<(Vec<String>, Vec<String>)>,
    crosscap_perms: Vec<Vec<String>>,
    cone_perms: Vec<Vec<String>>,
    cover_genus: i64,
    cover_orientable: bool,
}

fn cycle_strings(p: &Permutation) -> Vec<String> {
    p.cycles()
        .iter()
        .map(|cycle| {
            let inner = cycle
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(" ");
            format!("({inner})")
        })
        .collect()
}

impl Serialize for CoverCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CertificateWire {
            degree: self.degree,
            handle_perms: self
                .handle_perms
                .iter()
                .map(|(a, b)| (cycle_strings(a), cycle_strings(b)))
                .collect(),
            crosscap_perms: self.crosscap_perms.iter().map(cycle_strings).collect(),
            cone_perms: self.cone_perms.iter().map(cycle_strings).collect(),
            cover_genus: self.cover_genus,
            cover_orientable: self.cover_orientable,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CoverCertificate {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = CertificateWire::deserialize(deserializer)?;
        let parse = |cycles: &[String]| -> Result<Permutation, D::Error> {
            Permutation::parse_cycles(&cycles.concat(), wire.degree).map_err(D::Error::custom)
        };
        let mut handle_perms = Vec::with_capacity(wire.handle_perms.len());
        for (a, b) in &wire.handle_perms {
            handle_perms.push((parse(a)?, parse(b)?));
        }
        let mut crosscap_perms = Vec::with_capacity(wire.crosscap_perms.len());
        for x in &wire.crosscap_perms {
            crosscap_perms.push(parse(x)?);
        }
        let mut cone_perms = Vec::with_capacity(wire.cone_perms.len());
        for s in &wire.cone_perms {
            cone_perms.push(parse(s)?);
        }
        Ok(CoverCertificate {
            degree: wire.degree,
            handle_perms,
            crosscap_perms,
            cone_perms,
            cover_genus: wire.cover_genus,
            cover_orientable: wire.cover_orientable,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orb(genus: u32, orientable: bool, cones: &[i64]) -> Orbifold2D {
        Orbifold2D::new(genus, orientable, cones.to_vec()).unwrap()
    }

    fn perm(degree: usize, text: &str) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    #[test]
    fn finds_minimal_certificates_for_small_spheres() {
        let o = orb(0, true, &[2, 2]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(c.cone_perms, vec![perm(2, "(1 2)"), perm(2, "(1 2)")]);
        assert_eq!((c.cover_genus, c.cover_orientable), (0, true));
        verify_certificate(&o, &c).unwrap();

        let o = orb(0, true, &[2, 2, 2, 2]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!(c.cone_perms, vec![perm(2, "(1 2)"); 4]);
        assert_eq!((c.cover_genus, c.cover_orientable), (1, true));
        verify_certificate(&o, &c).unwrap();

        let o = orb(0, true, &[3, 3, 3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 3);
        assert_eq!(c.cone_perms, vec![perm(3, "(1 2 3)"); 3]);
        assert_eq!((c.cover_genus, c.cover_orientable), (1, true));
        verify_certificate(&o, &c).unwrap();
    }

    #[test]
    fn finds_degree_six_certificate_for_two_two_three_three() {
        let o = orb(0, true, &[2, 2, 3, 3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 6);
        assert_eq!(
            c.cone_perms,
            vec![
                perm(6, "(1 2)(3 4)(5 6)"),
                perm(6, "(1 2)(3 4)(5 6)"),
                perm(6, "(1 2 3)(4 5 6)"),
                perm(6, "(1 3 2)(4 6 5)"),
            ]
        );
        assert_eq!((c.cover_genus, c.cover_orientable), (2, true));
        verify_certificate(&o, &c).unwrap();
    }

    #[test]
    fn finds_degree_four_certificate_over_the_one_cone_torus() {
        let o = orb(1, true, &[2]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 4);
        assert_eq!(
            c.handle_perms,
            vec![(perm(4, "(3 4)"), perm(4, "(1 3)(2 4)"))]
        );
        assert_eq!(c.cone_perms, vec![perm(4, "(1 2)(3 4)")]);
        assert_eq!((c.cover_genus, c.cover_orientable), (2, true));
        verify_certificate(&o, &c).unwrap();
    }

    #[test]
    fn trivial_certificates_cover_smooth_bases() {
        let cases = [
            (orb(0, true, &[]), 0, true),
            (orb(1, true, &[]), 1, true),
            (orb(2, true, &[]), 2, true),
            (orb(1, false, &[]), 1, false),
            (orb(2, false, &[]), 2, false),
        ];
        for (o, genus, orientable) in cases {
            let c = smooth_cover_search(&o, 12, 0).unwrap();
            assert_eq!(c.degree, 1, "base {o}");
            assert_eq!((c.cover_genus, c.cover_orientable), (genus, orientable));
            verify_certificate(&o, &c).unwrap();
        }
    }

    #[test]
    fn rejects_bad_orbifolds_in_closed_form_and_by_exhaustion() {
        let teardrop = orb(0, true, &[3]);
        assert_eq!(
            smooth_cover_search(&teardrop, 12, 0),
            Err(CoverError::BadOrbifold(BadOrbifold::Teardrop))
        );
        assert_eq!(
            smooth_cover_search_exhaustive(&teardrop, 12, 0),
            Err(CoverError::NotFound { degree_bound: 36 })
        );

        let spindle = orb(0, true, &[2, 3]);
        assert_eq!(
            smooth_cover_search(&spindle, 12, 0),
            Err(CoverError::BadOrbifold(BadOrbifold::Spindle))
        );
        assert_eq!(
            smooth_cover_search_exhaustive(&spindle, 12, 0),
            Err(CoverError::NotFound { degree_bound: 72 })
        );

        // The two routes agree on good orbifolds too.
        let good = orb(0, true, &[2, 2]);
        assert_eq!(
            smooth_cover_search(&good, 12, 0).unwrap(),
            smooth_cover_search_exhaustive(&good, 12, 0).unwrap()
        );
    }

    #[test]
    fn verifier_rejects_doctored_certificates() {
        let o = orb(0, true, &[2, 2, 2, 2]);
        let good = smooth_cover_search(&o, 12, 0).unwrap();

        let mut wrong_type = good.clone();
        wrong_type.cone_perms[3] = Permutation::identity(2);
        assert_eq!(
            verify_certificate(&o, &wrong_type),
            Err(CertificateDefect::ConeCycleType { index: 3, order: 2 })
        );

        // Degree 2 cannot split into 3-cycles.
        let degree_too_small = CoverCertificate {
            degree: 2,
            handle_perms: vec![],
            crosscap_perms: vec![],
            cone_perms: vec![perm(2, "(1 2)"); 3],
            cover_genus: 0,
            cover_orientable: true,
        };
        assert_eq!(
            verify_certificate(&orb(0, true, &[3, 3, 3]), &degree_too_small),
            Err(CertificateDefect::ConeCycleType { index: 0, order: 3 })
        );

        let broken_relation = CoverCertificate {
            degree: 4,
            handle_perms: vec![],
            crosscap_perms: vec![],
            cone_perms: vec![perm(4, "(1 2)(3 4)"), perm(4, "(1 3)(2 4)")],
            cover_genus: 0,
            cover_orientable: true,
        };
        assert_eq!(
            verify_certificate(&orb(0, true, &[2, 2]), &broken_relation),
            Err(CertificateDefect::RelationNotIdentity)
        );

        let split_orbits = CoverCertificate {
            degree: 4,
            handle_perms: vec![],
            crosscap_perms: vec![],
            cone_perms: vec![perm(4, "(1 2)(3 4)"), perm(4, "(1 2)(3 4)")],
            cover_genus: 1,
            cover_orientable: true,
        };
        assert_eq!(
            verify_certificate(&orb(0, true, &[2, 2]), &split_orbits),
            Err(CertificateDefect::NotTransitive)
        );

        let mut wrong_euler = good.clone();
        wrong_euler.cover_genus = 3;
        assert_eq!(
            verify_certificate(&o, &wrong_euler),
            Err(CertificateDefect::EulerMismatch {
                expected: rational(0, 1),
                declared: -4,
            })
        );

        let klein = smooth_cover_search(&orb(2, false, &[]), 12, 0).unwrap();
        let mut flipped = klein.clone();
        flipped.cover_orientable = true;
        flipped.cover_genus = 1;
        assert_eq!(
            verify_certificate(&orb(2, false, &[]), &flipped),
            Err(CertificateDefect::OrientabilityFlag { expected: false })
        );

        assert!(matches!(
            verify_certificate(&orb(1, true, &[2, 2]), &good),
            Err(CertificateDefect::ShapeMismatch { .. })
        ));

        let mut stunted = good.clone();
        stunted.degree = 4;
        assert_eq!(
            verify_certificate(&orb(0, true, &[2, 2, 2, 2]), &stunted),
            Err(CertificateDefect::DegreeMismatch {
                expected: 4,
                found: 2,
            })
        );
    }

    #[test]
    fn closure_makes_certificates_regular() {
        let o = orb(1, true, &[2]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(
            deck_group_order(&c),
            Err(CoverError::NotRegular {
                order: 8,
                degree: 4,
            })
        );
        let g = galois_closure(&c).unwrap();
        assert_eq!(g.degree, 8);
        assert_eq!((g.cover_genus, g.cover_orientable), (3, true));
        verify_certificate(&o, &g).unwrap();
        assert_eq!(deck_group_order(&g), Ok(8));

        let o = orb(0, true, &[2, 2, 3, 3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        let g = galois_closure(&c).unwrap();
        verify_certificate(&o, &g).unwrap();
        assert_eq!(deck_group_order(&g), Ok(g.degree));
        assert_eq!(g.degree % c.degree, 0);

        assert_eq!(
            galois_closure_with_cap(&smooth_cover_search(&orb(1, true, &[2]), 12, 0).unwrap(), 5),
            Err(CoverError::GroupTooLarge { cap: 5 })
        );
    }

    #[test]
    fn closure_of_the_tetrahedral_certificate_has_order_twelve() {
        // A degree-4 certificate over the one-cone torus whose permutations
        // generate the alternating group on four points.
        let o = orb(1, true, &[2]);
        let c = CoverCertificate {
            degree: 4,
            handle_perms: vec![(perm(4, "(1 2 3)"), perm(4, "(1 2 4)"))],
            crosscap_perms: vec![],
            cone_perms: vec![perm(4, "(1 2)(3 4)")],
            cover_genus: 2,
            cover_orientable: true,
        };
        verify_certificate(&o, &c).unwrap();
        assert_eq!(
            deck_group_order(&c),
            Err(CoverError::NotRegular {
                order: 12,
                degree: 4,
            })
        );
        let g = galois_closure(&c).unwrap();
        assert_eq!(g.degree, 12);
        assert_eq!((g.cover_genus, g.cover_orientable), (4, true));
        verify_certificate(&o, &g).unwrap();
        assert_eq!(deck_group_order(&g), Ok(12));
    }

    #[test]
    fn nonorientable_bases_get_covers_with_orientation_bookkeeping() {
        // Two cone-2 points on the projective plane lift to a Klein bottle.
        let o = orb(1, false, &[2, 2]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 2);
        assert_eq!((c.cover_genus, c.cover_orientable), (2, false));
        verify_certificate(&o, &c).unwrap();

        let o = orb(1, false, &[3, 3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 3);
        assert_eq!((c.cover_genus, c.cover_orientable), (3, false));
        verify_certificate(&o, &c).unwrap();

        // One cone-3 point on the projective plane: the degree-3 cover is
        // again a projective plane, unwinding the cone.
        let o = orb(1, false, &[3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        assert_eq!(c.degree, 3);
        assert_eq!((c.cover_genus, c.cover_orientable), (1, false));
        assert_eq!(c.crosscap_perms, vec![perm(3, "(1 2 3)")]);
        verify_certificate(&o, &c).unwrap();
        let g = galois_closure(&c).unwrap();
        verify_certificate(&o, &g).unwrap();
        assert_eq!(deck_group_order(&g), Ok(3));
    }

    #[test]
    fn double_cover_orients_the_base() {
        let cases = [
            (orb(1, false, &[]), orb(0, true, &[])),
            (orb(2, false, &[]), orb(1, true, &[])),
            (orb(1, false, &[3]), orb(0, true, &[3, 3])),
            (orb(3, false, &[2, 5]), orb(2, true, &[2, 2, 5, 5])),
        ];
        for (nonor, expected) in cases {
            let doubled = orientation_double_cover(&nonor).unwrap();
            assert_eq!(doubled, expected);
            assert_eq!(
                doubled.euler_characteristic(),
                rational(2, 1) * nonor.euler_characteristic()
            );
        }
        assert_eq!(
            orientation_double_cover(&orb(1, true, &[])),
            Err(CoverError::AlreadyOrientable)
        );
    }

    #[test]
    fn search_is_deterministic_and_seed_tolerant() {
        let o = orb(0, true, &[2, 2, 3, 3]);
        assert_eq!(
            smooth_cover_search(&o, 12, 0).unwrap(),
            smooth_cover_search(&o, 12, 0).unwrap()
        );
        assert_eq!(
            smooth_cover_search(&o, 12, 5).unwrap(),
            smooth_cover_search(&o, 12, 5).unwrap()
        );
        // A shuffled alphabet may find a different certificate, but at the
        // same minimal degree, and it still verifies.
        let shuffled = smooth_cover_search(&o, 12, 5).unwrap();
        assert_eq!(shuffled.degree, 6);
        verify_certificate(&o, &shuffled).unwrap();

        let o = orb(1, true, &[2]);
        let shuffled = smooth_cover_search(&o, 12, 9).unwrap();
        assert_eq!(shuffled.degree, 4);
        verify_certificate(&o, &shuffled).unwrap();
    }

    #[test]
    fn certificates_round_trip_through_json() {
        let o = orb(0, true, &[2, 2, 3, 3]);
        let c = smooth_cover_search(&o, 12, 0).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        let back: CoverCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);

        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["degree"], 6);
        assert_eq!(
            value["cone_perms"][0],
            serde_json::json!(["(1 2)", "(3 4)", "(5 6)"])
        );

        // Identity permutations serialize as empty cycle lists.
        let klein = smooth_cover_search(&orb(2, false, &[]), 12, 0).unwrap();
        let text = serde_json::to_string(&klein).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["crosscap_perms"], serde_json::json!([[], []]));
        let back: CoverCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, klein);

        let torus_cover = smooth_cover_search(&orb(1, true, &[2]), 12, 0).unwrap();
        let text = serde_json::to_string(&torus_cover).unwrap();
        let back: CoverCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, torus_cover);
    }

    #[test]
    fn curated_corpus_certificates_verify_and_regularize() {
        let corpus: Vec<(Orbifold2D, usize)> = vec![
            (orb(0, true, &[]), 1),
            (orb(1, true, &[]), 1),
            (orb(2, true, &[]), 1),
            (orb(0, true, &[2, 2]), 2),
            (orb(0, true, &[4, 4]), 4),
            (orb(0, true, &[2, 2, 2, 2]), 2),
            (orb(0, true, &[3, 3, 3]), 3),
            (orb(0, true, &[2, 2, 3, 3]), 6),
            (orb(0, true, &[2, 4, 4]), 4),
            (orb(1, true, &[2]), 4),
            (orb(1, true, &[3]), 3),
            (orb(1, false, &[]), 1),
            (orb(2, false, &[]), 1),
            (orb(3, false, &[]), 1),
            (orb(1, false, &[2, 2]), 2),
            (orb(1, false, &[3, 3]), 3),
            (orb(1, false, &[3]), 3),
        ];
        for (o, minimal_degree) in corpus {
            for seed in [0u64, 7] {
                let c = smooth_cover_search(&o, 12, seed).unwrap();
                assert_eq!(c.degree, minimal_degree, "base {o} seed {seed}");
                verify_certificate(&o, &c)
                    .unwrap_or_else(|d| panic!("base {o} seed {seed}: {d}"));
                let g = galois_closure(&c).unwrap();
                assert_eq!(g.degree % c.degree, 0, "base {o} seed {seed}");
                verify_certificate(&o, &g)
                    .unwrap_or_else(|d| panic!("closure of base {o} seed {seed}: {d}"));
                assert_eq!(deck_group_order(&g), Ok(g.degree), "base {o} seed {seed}");
            }
        }
    }
}
