//! Symbolic pointwise expressions over group maps.
//!
//! A [`MapExpr`] combines concrete maps with the inversion map `I`,
//! conjugations `J_a`, composition, map inverse, pointwise negation, and
//! ordered pointwise sums. Evaluation is total except for `Inverse` applied
//! to a non-bijective subtree, which reports the offending subtree.
//!
//! Sum order matters: `Sum([f, g])` is `x -> f(x) + g(x)` with left-to-right
//! group addition, which does not commute in non-abelian groups.

use std::fmt;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::morphism::Morphism;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("inverse of a non-bijective map in subtree {subtree}: images of {a} and {b} collide")]
    NonBijectiveInverse { subtree: String, a: usize, b: usize },
    #[error("empty pointwise sum")]
    EmptySum,
    #[error("element {element} out of range for group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
}

/// An expression tree denoting a map on the elements of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapExpr {
    /// A concrete map.
    Atom(Morphism),
    /// The inversion map `x -> -x`.
    Inversion,
    /// Conjugation `J_a : x -> a + x - a`.
    Conjugation(usize),
    /// The inverse conjugation `J_a^-1 : x -> -a + x + a`.
    ConjugationInv(usize),
    /// `left . right`, the right map applied first.
    Compose(Box<MapExpr>, Box<MapExpr>),
    /// Map inverse; the child must evaluate to a bijection.
    Inverse(Box<MapExpr>),
    /// Ordered pointwise sum of the terms.
    Sum(Vec<MapExpr>),
    /// `x -> -(f(x))`.
    Negate(Box<MapExpr>),
}

impl MapExpr {
    pub fn atom(m: Morphism) -> MapExpr {
        MapExpr::Atom(m)
    }

    pub fn identity(g: &FiniteGroup) -> MapExpr {
        MapExpr::Atom(Morphism::identity(g))
    }

    pub fn compose(left: MapExpr, right: MapExpr) -> MapExpr {
        MapExpr::Compose(Box::new(left), Box::new(right))
    }

    pub fn inverse(child: MapExpr) -> MapExpr {
        MapExpr::Inverse(Box::new(child))
    }

    pub fn negate(child: MapExpr) -> MapExpr {
        MapExpr::Negate(Box::new(child))
    }

    pub fn sum(terms: Vec<MapExpr>) -> MapExpr {
        MapExpr::Sum(terms)
    }

    /// Chained composition `parts[0] . parts[1] . ... . parts[k]`
    /// (the last part applied first).
    pub fn compose_all(parts: Vec<MapExpr>) -> MapExpr {
        let mut iter = parts.into_iter().rev();
        let first = iter.next().expect("compose_all needs at least one part");
        iter.fold(first, |acc, next| MapExpr::compose(next, acc))
    }

    /// Evaluates the expression to a full image array.
    pub fn eval(&self, g: &FiniteGroup) -> Result<Vec<usize>, EvalError> {
        let mut scratch = EvalScratch::new();
        self.eval_with(g, &mut scratch)
    }

    /// As [`Self::eval`] but reusing scratch buffers across calls; the hot
    /// path for sweeps that evaluate millions of expressions.
    pub fn eval_with(&self, g: &FiniteGroup, scratch: &mut EvalScratch) -> Result<Vec<usize>, EvalError> {
        let mut out = scratch.lease(g.order());
        match self.eval_into(g, scratch, &mut out) {
            Ok(()) => Ok(out),
            Err(e) => {
                scratch.release(out);
                Err(e)
            }
        }
    }

    fn eval_into(
        &self,
        g: &FiniteGroup,
        scratch: &mut EvalScratch,
        out: &mut Vec<usize>,
    ) -> Result<(), EvalError> {
        let n = g.order();
        match self {
            MapExpr::Atom(m) => {
                if m.map().len() != n {
                    return Err(EvalError::ElementOutOfRange {
                        element: m.map().len(),
                        order: n,
                    });
                }
                out.copy_from_slice(m.map());
            }
            MapExpr::Inversion => {
                for x in 0..n {
                    out[x] = g.neg(x);
                }
            }
            MapExpr::Conjugation(a) => {
                if *a >= n {
                    return Err(EvalError::ElementOutOfRange { element: *a, order: n });
                }
                for x in 0..n {
                    out[x] = g.conjugate(*a, x);
                }
            }
            MapExpr::ConjugationInv(a) => {
                if *a >= n {
                    return Err(EvalError::ElementOutOfRange { element: *a, order: n });
                }
                let na = g.neg(*a);
                for x in 0..n {
                    out[x] = g.conjugate(na, x);
                }
            }
            MapExpr::Compose(left, right) => {
                let mut inner = scratch.lease(n);
                if let Err(e) = right.eval_into(g, scratch, &mut inner) {
                    scratch.release(inner);
                    return Err(e);
                }
                let mut outer = scratch.lease(n);
                if let Err(e) = left.eval_into(g, scratch, &mut outer) {
                    scratch.release(outer);
                    scratch.release(inner);
                    return Err(e);
                }
                for x in 0..n {
                    out[x] = outer[inner[x]];
                }
                scratch.release(outer);
                scratch.release(inner);
            }
            MapExpr::Inverse(child) => {
                let mut buf = scratch.lease(n);
                if let Err(e) = child.eval_into(g, scratch, &mut buf) {
                    scratch.release(buf);
                    return Err(e);
                }
                out.fill(usize::MAX);
                for (x, &y) in buf.iter().enumerate() {
                    if out[y] != usize::MAX {
                        let first = out[y];
                        scratch.release(buf);
                        return Err(EvalError::NonBijectiveInverse {
                            subtree: child.to_string(),
                            a: first,
                            b: x,
                        });
                    }
                    out[y] = x;
                }
                scratch.release(buf);
            }
            MapExpr::Sum(terms) => {
                if terms.is_empty() {
                    return Err(EvalError::EmptySum);
                }
                let mut first = true;
                let mut buf = scratch.lease(n);
                for term in terms {
                    if let Err(e) = term.eval_into(g, scratch, &mut buf) {
                        scratch.release(buf);
                        return Err(e);
                    }
                    if first {
                        out.copy_from_slice(&buf);
                        first = false;
                    } else {
                        for x in 0..n {
                            out[x] = g.add(out[x], buf[x]);
                        }
                    }
                }
                scratch.release(buf);
            }
            MapExpr::Negate(child) => {
                child.eval_into(g, scratch, out)?;
                for x in 0..n {
                    out[x] = g.neg(out[x]);
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MapExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapExpr::Atom(m) => {
                if m.is_identity() {
                    write!(f, "id")
                } else {
                    write!(f, "[{}]", m.map().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
                }
            }
            MapExpr::Inversion => write!(f, "I"),
            MapExpr::Conjugation(a) => write!(f, "J_{a}"),
            MapExpr::ConjugationInv(a) => write!(f, "J_{a}^-1"),
            MapExpr::Compose(l, r) => write!(f, "({l} . {r})"),
            MapExpr::Inverse(c) => write!(f, "inv({c})"),
            MapExpr::Sum(terms) => {
                write!(f, "(")?;
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
            MapExpr::Negate(c) => write!(f, "-{c}"),
        }
    }
}

/// Reusable buffer pool for expression evaluation.
#[derive(Default)]
pub struct EvalScratch {
    pool: Vec<Vec<usize>>,
}

impl EvalScratch {
    pub fn new() -> EvalScratch {
        EvalScratch::default()
    }

    fn lease(&mut self, n: usize) -> Vec<usize> {
        match self.pool.pop() {
            Some(mut buf) => {
                buf.resize(n, 0);
                buf
            }
            None => vec![0; n],
        }
    }

    /// Returns a buffer to the pool; also accepts result vectors from
    /// [`MapExpr::eval_with`] once the caller is done with them.
    pub fn release(&mut self, buf: Vec<usize>) {
        self.pool.push(buf);
    }
}

/// True iff the expression evaluates to a bijection (image has n distinct
/// values, checked through a bitset).
pub fn is_permutation_expr(g: &FiniteGroup, expr: &MapExpr) -> Result<bool, EvalError> {
    let mut scratch = EvalScratch::new();
    is_permutation_expr_with(g, expr, &mut scratch)
}

/// Scratch-reusing variant of [`is_permutation_expr`].
pub fn is_permutation_expr_with(
    g: &FiniteGroup,
    expr: &MapExpr,
    scratch: &mut EvalScratch,
) -> Result<bool, EvalError> {
    let values = expr.eval_with(g, scratch)?;
    let distinct = distinct_values(&values);
    scratch.release(values);
    Ok(distinct)
}

/// Bitset distinctness check; group orders are capped at 128 so two words
/// suffice.
pub(crate) fn distinct_values(values: &[usize]) -> bool {
    let mut seen = [0u64; 2];
    for &v in values {
        let (word, bit) = (v / 64, v % 64);
        if seen[word] & (1 << bit) != 0 {
            return false;
        }
        seen[word] |= 1 << bit;
    }
    true
}

/// First pair of positions with equal images, if any.
pub(crate) fn first_image_collision(values: &[usize]) -> Option<(usize, usize)> {
    let mut seen = [usize::MAX; 128];
    for (x, &v) in values.iter().enumerate() {
        if seen[v] != usize::MAX {
            return Some((seen[v], x));
        }
        seen[v] = x;
    }
    None
}
