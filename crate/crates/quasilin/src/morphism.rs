//! Maps on group elements tagged by verified class: permutations,
//! automorphisms, anti-automorphisms, and inner automorphisms.
//!
//! A [`Morphism`] is a total length-n array of images. Tags are never
//! trusted: every constructor re-checks the claimed property against the
//! group it is built for.

use itertools::Itertools;
use thiserror::Error;

use crate::group::FiniteGroup;

/// Enumeration is exact, so very large automorphism searches are refused.
pub const MAX_ENUMERATION_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MorphismError {
    #[error("map has length {len}, group has order {order}")]
    LengthMismatch { len: usize, order: usize },
    #[error("map entry {value} at position {at} is out of range for order {order}")]
    EntryOutOfRange { at: usize, value: usize, order: usize },
    #[error("map is not a bijection: images {a} and {b} collide on value {value}")]
    NotBijective { a: usize, b: usize, value: usize },
    #[error("map is not an automorphism of the group")]
    NotAutomorphism,
    #[error("map is not an anti-automorphism of the group")]
    NotAntiAutomorphism,
    #[error("group order {0} exceeds the enumeration cap {MAX_ENUMERATION_ORDER}")]
    OrderCap(usize),
}

/// Which verified classes a map belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct MorphismTags {
    pub permutation: bool,
    pub automorphism: bool,
    pub anti_automorphism: bool,
    pub inner: bool,
}

/// A total map on the elements of a fixed finite group.
///
/// Ordering is lexicographic by the image array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Morphism {
    map: Vec<usize>,
    tags: MorphismTags,
    inner_witness: Option<usize>,
}

impl Morphism {
    /// Classifies an arbitrary map against `g`, computing every tag.
    ///
    /// The inner tag searches for a conjugating witness, so classification is
    /// O(n^2); fine at the orders this crate works with.
    pub fn classify(g: &FiniteGroup, map: Vec<usize>) -> Result<Morphism, MorphismError> {
        check_map(g, &map)?;
        let permutation = is_permutation_map(&map);
        let automorphism = permutation && preserves_operation(g, &map);
        let anti_automorphism = permutation && reverses_operation(g, &map);
        let inner_witness = if automorphism {
            g.elements().find(|&a| (0..g.order()).all(|x| map[x] == g.conjugate(a, x)))
        } else {
            None
        };
        Ok(Morphism {
            map,
            tags: MorphismTags {
                permutation,
                automorphism,
                anti_automorphism,
                inner: inner_witness.is_some(),
            },
            inner_witness,
        })
    }

    /// A map that must be a bijection; errors otherwise.
    pub fn permutation(g: &FiniteGroup, map: Vec<usize>) -> Result<Morphism, MorphismError> {
        check_map(g, &map)?;
        if let Some((a, b, value)) = first_collision(&map) {
            return Err(MorphismError::NotBijective { a, b, value });
        }
        Morphism::classify(g, map)
    }

    /// A map that must be an automorphism; errors otherwise.
    pub fn automorphism(g: &FiniteGroup, map: Vec<usize>) -> Result<Morphism, MorphismError> {
        let m = Morphism::classify(g, map)?;
        if !m.tags().automorphism {
            return Err(MorphismError::NotAutomorphism);
        }
        Ok(m)
    }

    /// A map that must be an anti-automorphism; errors otherwise.
    pub fn anti_automorphism(g: &FiniteGroup, map: Vec<usize>) -> Result<Morphism, MorphismError> {
        let m = Morphism::classify(g, map)?;
        if !m.tags().anti_automorphism {
            return Err(MorphismError::NotAntiAutomorphism);
        }
        Ok(m)
    }

    /// The identity map on `g`.
    pub fn identity(g: &FiniteGroup) -> Morphism {
        Morphism::classify(g, (0..g.order()).collect()).unwrap()
    }

    /// The inversion map `x -> -x`.
    pub fn inversion(g: &FiniteGroup) -> Morphism {
        Morphism::classify(g, g.elements().map(|x| g.neg(x)).collect()).unwrap()
    }

    /// The inner automorphism `x -> a + x - a`.
    pub fn inner(g: &FiniteGroup, a: usize) -> Morphism {
        let map = g.elements().map(|x| g.conjugate(a, x)).collect();
        let mut m = Morphism::classify(g, map).unwrap();
        // classification picks the smallest witness; remember the requested one
        m.inner_witness = Some(a);
        m
    }

    /// The affine map `x -> phi(x) + c` built from an automorphism.
    pub fn affine(g: &FiniteGroup, phi: &Morphism, c: usize) -> Morphism {
        let map = g.elements().map(|x| g.add(phi.map[x], c)).collect();
        Morphism::classify(g, map).unwrap()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn tags(&self) -> MorphismTags {
        self.tags
    }

    pub fn inner_witness(&self) -> Option<usize> {
        self.inner_witness
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` after `other`: `x -> self(other(x))`, reclassified.
    pub fn compose(&self, g: &FiniteGroup, other: &Morphism) -> Morphism {
        let map = other.map.iter().map(|&x| self.map[x]).collect();
        Morphism::classify(g, map).unwrap()
    }

    /// Inverse map; requires the bijection tag.
    pub fn inverse(&self, g: &FiniteGroup) -> Result<Morphism, MorphismError> {
        if let Some((a, b, value)) = first_collision(&self.map) {
            return Err(MorphismError::NotBijective { a, b, value });
        }
        let mut inv = vec![0usize; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Morphism::classify(g, inv)
    }
}

fn check_map(g: &FiniteGroup, map: &[usize]) -> Result<(), MorphismError> {
    if map.len() != g.order() {
        return Err(MorphismError::LengthMismatch {
            len: map.len(),
            order: g.order(),
        });
    }
    for (at, &value) in map.iter().enumerate() {
        if value >= g.order() {
            return Err(MorphismError::EntryOutOfRange {
                at,
                value,
                order: g.order(),
            });
        }
    }
    Ok(())
}

fn first_collision(map: &[usize]) -> Option<(usize, usize, usize)> {
    let mut seen = vec![usize::MAX; map.len()];
    for (x, &v) in map.iter().enumerate() {
        if seen[v] != usize::MAX {
            return Some((seen[v], x, v));
        }
        seen[v] = x;
    }
    None
}

pub(crate) fn is_permutation_map(map: &[usize]) -> bool {
    first_collision(map).is_none()
}

fn preserves_operation(g: &FiniteGroup, map: &[usize]) -> bool {
    for x in g.elements() {
        for y in g.elements() {
            if map[g.add(x, y)] != g.add(map[x], map[y]) {
                return false;
            }
        }
    }
    true
}

fn reverses_operation(g: &FiniteGroup, map: &[usize]) -> bool {
    for x in g.elements() {
        for y in g.elements() {
            if map[g.add(x, y)] != g.add(map[y], map[x]) {
                return false;
            }
        }
    }
    true
}

/// True iff `map` is a bijection preserving the group operation.
pub fn is_automorphism(g: &FiniteGroup, map: &[usize]) -> bool {
    check_map(g, map).is_ok() && is_permutation_map(map) && preserves_operation(g, map)
}

/// True iff `map` is a bijection reversing the group operation:
/// `map(x + y) = map(y) + map(x)`.
pub fn is_antiautomorphism(g: &FiniteGroup, map: &[usize]) -> bool {
    check_map(g, map).is_ok() && is_permutation_map(map) && reverses_operation(g, map)
}

/// The full automorphism group of `g` in lexicographic map order.
///
/// Small groups (order <= 8) are done by filtering all n! bijections; larger
/// ones extend generator images with pruning, which is exact but avoids the
/// factorial blowup (S4 alone would need 24! candidates).
pub fn enumerate_automorphisms(g: &FiniteGroup) -> Result<Vec<Morphism>, MorphismError> {
    let n = g.order();
    if n > MAX_ENUMERATION_ORDER {
        return Err(MorphismError::OrderCap(n));
    }
    let maps = if n <= 8 {
        (0..n)
            .permutations(n)
            .filter(|map| preserves_operation(g, map))
            .collect()
    } else {
        automorphisms_by_generators(g)
    };
    let mut out: Vec<Morphism> = maps
        .into_iter()
        .map(|map| Morphism::classify(g, map).unwrap())
        .collect();
    out.sort();
    Ok(out)
}

/// The anti-automorphisms of `g`: exactly `{ I . phi : phi in Aut(g) }`,
/// each re-verified against the definition; lexicographic map order.
pub fn enumerate_antiautomorphisms(g: &FiniteGroup) -> Result<Vec<Morphism>, MorphismError> {
    let auts = enumerate_automorphisms(g)?;
    let mut out: Vec<Morphism> = auts
        .iter()
        .map(|phi| {
            let map: Vec<usize> = g.elements().map(|x| g.neg(phi.apply(x))).collect();
            debug_assert!(is_antiautomorphism(g, &map));
            Morphism::classify(g, map).unwrap()
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The distinct inner automorphisms `{ J_a : a in g }` in lexicographic order.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = g.elements().map(|a| Morphism::inner(g, a)).collect();
    out.sort();
    out.dedup_by(|a, b| a.map() == b.map());
    out
}

fn automorphisms_by_generators(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let gens = greedy_generating_set(g);
    let orders: Vec<usize> = g.elements().map(|x| element_order(g, x)).collect();
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[g.identity()] = g.identity();
    used[g.identity()] = true;
    extend(g, &gens, &orders, 0, &mut image, &mut used, &mut found);
    found
}

/// Depth-first extension of generator images with closure and pruning.
fn extend(
    g: &FiniteGroup,
    gens: &[usize],
    orders: &[usize],
    next: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    if next == gens.len() {
        if image.iter().all(|&v| v != usize::MAX) && is_automorphism(g, image) {
            found.push(image.clone());
        }
        return;
    }
    let gen = gens[next];
    for candidate in g.elements() {
        if used[candidate] || orders[candidate] != orders[gen] {
            continue;
        }
        let snapshot_image = image.clone();
        let snapshot_used = used.clone();
        image[gen] = candidate;
        used[candidate] = true;
        if close_partial(g, image, used) {
            extend(g, gens, orders, next + 1, image, used, found);
        }
        *image = snapshot_image;
        *used = snapshot_used;
    }
}

/// Propagates `image` over all products of already-mapped elements.
/// Returns false on any homomorphism or injectivity conflict.
fn close_partial(g: &FiniteGroup, image: &mut [usize], used: &mut [bool]) -> bool {
    loop {
        let mut changed = false;
        let known: Vec<usize> = (0..g.order()).filter(|&x| image[x] != usize::MAX).collect();
        for &a in &known {
            for &b in &known {
                let c = g.add(a, b);
                let target = g.add(image[a], image[b]);
                if image[c] == usize::MAX {
                    if used[target] {
                        return false;
                    }
                    image[c] = target;
                    used[target] = true;
                    changed = true;
                } else if image[c] != target {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn greedy_generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut closure = vec![false; g.order()];
    closure[g.identity()] = true;
    let mut size = 1;
    while size < g.order() {
        let fresh = g.elements().find(|&x| !closure[x]).unwrap();
        gens.push(fresh);
        // close under products
        closure[fresh] = true;
        loop {
            let mut changed = false;
            let members: Vec<usize> = (0..g.order()).filter(|&x| closure[x]).collect();
            for &a in &members {
                for &b in &members {
                    let c = g.add(a, b);
                    if !closure[c] {
                        closure[c] = true;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        size = closure.iter().filter(|&&b| b).count();
    }
    gens
}

fn element_order(g: &FiniteGroup, x: usize) -> usize {
    let mut acc = x;
    let mut k = 1;
    while acc != g.identity() {
        acc = g.add(acc, x);
        k += 1;
    }
    k
}
