//! Finite groups represented by explicit Cayley tables.
//!
//! Elements are dense indices `0..n` and the operation is an `n x n` lookup
//! table (row = left operand), so evaluation inside enumeration loops is a
//! single indexed load. Construction always verifies the full group axioms;
//! orders are capped at [`MAX_ORDER`] to keep the O(n^3) associativity check
//! honest rather than sampled.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

/// Largest group order accepted by the constructors.
pub const MAX_ORDER: usize = 128;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be positive")]
    ZeroOrder,
    #[error("order {0} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge(usize),
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("entry {value} at row {row}, column {col} is out of range for order {order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("not a Latin square: {axis} {index} contains value {value} twice")]
    NotLatinSquare {
        axis: &'static str,
        index: usize,
        value: usize,
    },
    #[error("table has no two-sided identity element")]
    MissingIdentity,
    #[error("not associative: ({a}*{b})*{c} differs from {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("symmetric group degree {0} outside the supported range 1..=5")]
    SymmetricDegree(usize),
    #[error("dihedral group parameter {0} must be at least 3")]
    DihedralParameter(usize),
    #[error("malformed table text: {0}")]
    Parse(String),
}

/// A finite group given by its Cayley table.
///
/// Immutable after construction; all four axioms (Latin square, identity,
/// inverses, associativity) are re-verified by every constructor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
}

impl FiniteGroup {
    /// The cyclic group Z_n with `x + y mod n` and identity 0.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if n > MAX_ORDER {
            return Err(GroupError::TooLarge(n));
        }
        let mut table = vec![0usize; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = (x + y) % n;
            }
        }
        Self::from_flat_table(n, table, format!("Z{n}"))
    }

    /// The symmetric group S_n acting on `{0..n-1}`.
    ///
    /// Elements are the permutations in lexicographic one-line order, so the
    /// identity permutation is always index 0. The product `p * q` is the
    /// permutation `x -> p(q(x))`. Degrees above 5 are rejected: order n!
    /// must stay small enough for exhaustive verification.
    pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 || n > 5 {
            return Err(GroupError::SymmetricDegree(n));
        }
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let order = perms.len();
        let index_of = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let mut table = vec![0usize; order * order];
        let mut product = vec![0usize; n];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                for x in 0..n {
                    product[x] = pa[pb[x]];
                }
                table[a * order + b] = index_of(&product);
            }
        }
        Self::from_flat_table(order, table, format!("S{n}"))
    }

    /// The dihedral group of order 2n with presentation
    /// `r^n = s^2 = e`, `s r s = r^-1`.
    ///
    /// Indices `0..n` are the rotations `r^i`, indices `n..2n` are `s r^i`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n < 3 {
            return Err(GroupError::DihedralParameter(n));
        }
        let order = 2 * n;
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut table = vec![0usize; order * order];
        for i in 0..n {
            for j in 0..n {
                // r^i r^j = r^(i+j);  r^i (s r^j) = s r^(j-i)
                table[i * order + j] = (i + j) % n;
                table[i * order + (n + j)] = n + (n + j - i) % n;
                // (s r^i) r^j = s r^(i+j);  (s r^i)(s r^j) = r^(j-i)
                table[(n + i) * order + j] = n + (i + j) % n;
                table[(n + i) * order + (n + j)] = (n + j - i) % n;
            }
        }
        Self::from_flat_table(order, table, format!("D{n}"))
    }

    /// Componentwise product of two groups; pair `(a, b)` has index
    /// `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
        let order = g.order * h.order;
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut table = vec![0usize; order * order];
        for a1 in 0..g.order {
            for b1 in 0..h.order {
                let x = a1 * h.order + b1;
                for a2 in 0..g.order {
                    for b2 in 0..h.order {
                        let y = a2 * h.order + b2;
                        table[x * order + y] = g.add(a1, a2) * h.order + h.add(b1, b2);
                    }
                }
            }
        }
        Self::from_flat_table(order, table, format!("{}x{}", g.label, h.label))
    }

    /// Builds a group from a square table of element indices, verifying all
    /// axioms and locating identity and inverses.
    pub fn from_cayley_table(rows: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare {
                    row: i,
                    len: row.len(),
                    order: n,
                });
            }
            flat.extend_from_slice(row);
        }
        Self::from_flat_table(n, flat, format!("table{n}"))
    }

    /// As [`Self::from_cayley_table`] but over a flat row-major table.
    pub fn from_flat_table(
        order: usize,
        table: Vec<usize>,
        label: impl Into<String>,
    ) -> Result<FiniteGroup, GroupError> {
        if order == 0 {
            return Err(GroupError::ZeroOrder);
        }
        if order > MAX_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        assert_eq!(table.len(), order * order, "flat table length mismatch");
        check_entries(order, &table)?;
        check_latin(order, &table)?;
        // an associative Latin square is a group, so checking associativity
        // first gives the sharper error for quasigroup-but-not-group tables
        check_associative(order, &table)?;
        let identity = find_identity(order, &table).ok_or(GroupError::MissingIdentity)?;
        let mut inverse = vec![0usize; order];
        for x in 0..order {
            // the row of x is a permutation, so the solve always succeeds
            inverse[x] = (0..order).find(|&y| table[x * order + y] == identity).unwrap();
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
            label: label.into(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> FiniteGroup {
        self.label = label.into();
        self
    }

    /// `x + y` in the group.
    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y]
    }

    /// `-x`, the group inverse.
    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.inverse[x]
    }

    /// `x - y` shorthand for `x + (-y)`.
    #[inline]
    pub fn sub(&self, x: usize, y: usize) -> usize {
        self.add(x, self.neg(y))
    }

    /// `a + x - a`, conjugation of `x` by `a`.
    #[inline]
    pub fn conjugate(&self, a: usize, x: usize) -> usize {
        self.sub(self.add(a, x), a)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order)
            .all(|x| (x + 1..self.order).all(|y| self.add(x, y) == self.add(y, x)))
    }

    pub fn flat_table(&self) -> &[usize] {
        &self.table
    }

    /// Re-runs the full constructor validation. Always true for values built
    /// by this module; exposed so tests can assert it explicitly.
    pub fn revalidate(&self) -> Result<(), GroupError> {
        Self::from_flat_table(self.order, self.table.clone(), self.label.clone()).map(|_| ())
    }

    /// Renders the table in the text format read by [`Self::parse_text`]:
    /// a `#` label comment, the order on its own line, then one row per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {}\n", self.label));
        out.push_str(&table_text(self.order, &self.table));
        out
    }

    /// Parses the Cayley-table text format and validates the group axioms.
    ///
    /// Line 1 (after comments) holds the order `n`, the next `n` lines hold
    /// `n` space-separated entries each. Lines starting with `#` are ignored.
    pub fn parse_text(text: &str) -> Result<FiniteGroup, GroupError> {
        let (order, table) = parse_table_text(text)?;
        Self::from_flat_table(order, table, format!("table{order}"))
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

fn check_entries(order: usize, table: &[usize]) -> Result<(), GroupError> {
    for x in 0..order {
        for y in 0..order {
            let value = table[x * order + y];
            if value >= order {
                return Err(GroupError::EntryOutOfRange {
                    row: x,
                    col: y,
                    value,
                    order,
                });
            }
        }
    }
    Ok(())
}

fn check_latin(order: usize, table: &[usize]) -> Result<(), GroupError> {
    let mut seen = vec![false; order];
    for x in 0..order {
        seen.fill(false);
        for y in 0..order {
            let v = table[x * order + y];
            if seen[v] {
                return Err(GroupError::NotLatinSquare {
                    axis: "row",
                    index: x,
                    value: v,
                });
            }
            seen[v] = true;
        }
    }
    for y in 0..order {
        seen.fill(false);
        for x in 0..order {
            let v = table[x * order + y];
            if seen[v] {
                return Err(GroupError::NotLatinSquare {
                    axis: "column",
                    index: y,
                    value: v,
                });
            }
            seen[v] = true;
        }
    }
    Ok(())
}

fn find_identity(order: usize, table: &[usize]) -> Option<usize> {
    (0..order).find(|&e| {
        (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x)
    })
}

fn check_associative(order: usize, table: &[usize]) -> Result<(), GroupError> {
    for a in 0..order {
        for b in 0..order {
            let ab = table[a * order + b];
            for c in 0..order {
                if table[ab * order + c] != table[a * order + table[b * order + c]] {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

/// Renders a square table (order line plus rows) without any comment header.
pub fn table_text(order: usize, table: &[usize]) -> String {
    let mut out = format!("{order}\n");
    for x in 0..order {
        let row = &table[x * order..(x + 1) * order];
        out.push_str(&row.iter().map(|v| v.to_string()).join(" "));
        out.push('\n');
    }
    out
}

/// Parses the shared table text format; returns `(order, flat row-major table)`.
pub fn parse_table_text(text: &str) -> Result<(usize, Vec<usize>), GroupError> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let order: usize = lines
        .next()
        .ok_or_else(|| GroupError::Parse("empty input".into()))?
        .parse()
        .map_err(|_| GroupError::Parse("first non-comment line must be the order".into()))?;
    if order == 0 {
        return Err(GroupError::ZeroOrder);
    }
    let mut table = Vec::with_capacity(order * order);
    for i in 0..order {
        let line = lines
            .next()
            .ok_or_else(|| GroupError::Parse(format!("missing row {i}")))?;
        let row: Vec<usize> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| GroupError::Parse(format!("bad entry '{tok}' in row {i}")))
            })
            .collect::<Result<_, _>>()?;
        if row.len() != order {
            return Err(GroupError::NotSquare {
                row: i,
                len: row.len(),
                order,
            });
        }
        table.extend_from_slice(&row);
    }
    if lines.next().is_some() {
        return Err(GroupError::Parse("trailing content after table rows".into()));
    }
    Ok((order, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.flat_table(), &[0]);
    }

    #[test]
    fn cyclic_three_row_one() {
        let g = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(&g.flat_table()[3..6], &[1, 2, 0]);
    }

    #[test]
    fn cyclic_five_inverse() {
        let g = FiniteGroup::cyclic(5).unwrap();
        assert_eq!(g.neg(2), 3);
    }

    #[test]
    fn cyclic_zero_rejected() {
        assert_eq!(FiniteGroup::cyclic(0).unwrap_err(), GroupError::ZeroOrder);
    }

    #[test]
    fn cyclic_abelian_up_to_twelve() {
        for n in 1..=12 {
            assert!(FiniteGroup::cyclic(n).unwrap().is_abelian(), "Z{n}");
        }
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(FiniteGroup::symmetric(1).unwrap().order(), 1);
        assert_eq!(FiniteGroup::symmetric(3).unwrap().order(), 6);
        assert_eq!(FiniteGroup::symmetric(4).unwrap().order(), 24);
        assert!(FiniteGroup::symmetric(6).is_err());
        assert!(FiniteGroup::symmetric(0).is_err());
    }

    #[test]
    fn symmetric_three_non_abelian() {
        let g = FiniteGroup::symmetric(3).unwrap();
        assert!(!g.is_abelian());
    }

    #[test]
    fn symmetric_four_center_trivial() {
        // brute-force center computation
        let g = FiniteGroup::symmetric(4).unwrap();
        let center: Vec<usize> = g
            .elements()
            .filter(|&z| g.elements().all(|x| g.add(z, x) == g.add(x, z)))
            .collect();
        assert_eq!(center, vec![g.identity()]);
    }

    #[test]
    fn symmetric_identity_is_index_zero() {
        for n in 1..=4 {
            assert_eq!(FiniteGroup::symmetric(n).unwrap().identity(), 0);
        }
    }

    #[test]
    fn dihedral_basics() {
        assert!(FiniteGroup::dihedral(2).is_err());
        let d3 = FiniteGroup::dihedral(3).unwrap();
        assert_eq!(d3.order(), 6);
        // r * s != s * r, with r = index 1 and s = index 3
        assert_ne!(d3.add(1, 3), d3.add(3, 1));
    }

    #[test]
    fn dihedral_four_center() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        let center: Vec<usize> = d4
            .elements()
            .filter(|&z| d4.elements().all(|x| d4.add(z, x) == d4.add(x, z)))
            .collect();
        assert_eq!(center.len(), 2);
    }

    #[test]
    fn dihedral_three_isomorphic_to_s3() {
        let d3 = FiniteGroup::dihedral(3).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert!(isomorphic(&d3, &s3));
    }

    #[test]
    fn product_orders_and_exponent() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let g = FiniteGroup::direct_product(&z2, &z2).unwrap();
        assert_eq!(g.order(), 4);
        for x in g.elements() {
            assert_eq!(g.add(x, x), g.identity());
        }
    }

    #[test]
    fn product_z2_z3_isomorphic_to_z6() {
        let g = FiniteGroup::direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(3).unwrap(),
        )
        .unwrap();
        assert!(isomorphic(&g, &FiniteGroup::cyclic(6).unwrap()));
    }

    #[test]
    fn product_with_trivial_group() {
        let z1 = FiniteGroup::cyclic(1).unwrap();
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let g = FiniteGroup::direct_product(&z1, &s3).unwrap();
        assert!(isomorphic(&g, &s3));
    }

    #[test]
    fn from_table_z2() {
        let g = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn from_table_rejects_non_latin() {
        let err = FiniteGroup::from_cayley_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, GroupError::NotLatinSquare { .. }));
    }

    #[test]
    fn from_table_rejects_non_associative_latin_square() {
        // x * y = 2x + y mod 5 is a Latin square with a left identity only
        let n = 5;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| (2 * x + y) % n).collect())
            .collect();
        let err = FiniteGroup::from_cayley_table(&rows).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "got {err:?}");
    }

    #[test]
    fn builders_revalidate_and_inverse_involution() {
        let groups = [
            FiniteGroup::cyclic(7).unwrap(),
            FiniteGroup::symmetric(3).unwrap(),
            FiniteGroup::dihedral(4).unwrap(),
            FiniteGroup::direct_product(
                &FiniteGroup::cyclic(2).unwrap(),
                &FiniteGroup::cyclic(4).unwrap(),
            )
            .unwrap(),
        ];
        for g in &groups {
            g.revalidate().unwrap();
            for x in g.elements() {
                assert_eq!(g.neg(g.neg(x)), x);
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let g = FiniteGroup::cyclic(5).unwrap();
        let text = g.to_text();
        assert!(text.starts_with("# Z5\n5\n0 1 2 3 4\n"));
        let parsed = FiniteGroup::parse_text(&text).unwrap();
        assert_eq!(parsed.flat_table(), g.flat_table());
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(FiniteGroup::parse_text("").is_err());
        assert!(FiniteGroup::parse_text("2\n0 1\n1").is_err());
        assert!(FiniteGroup::parse_text("2\n0 x\n1 0").is_err());
    }

    /// Brute-force isomorphism search; only usable at tiny orders.
    fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
        if g.order() != h.order() {
            return false;
        }
        let n = g.order();
        (0..n).permutations(n).any(|phi| {
            (0..n).all(|x| (0..n).all(|y| phi[g.add(x, y)] == h.add(phi[x], phi[y])))
        })
    }
}
