use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::field::Field;
use super::monomial::Monomial;

pub const DEFAULT_MAX_DEGREE: u32 = 64;

/// Monomial orders. Degree-based orders use the ring's weight vector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically.
    Grevlex,
    Lex,
    /// Two blocks, each ordered by weighted grevlex; the first `n` variables
    /// are eliminated (any monomial involving them beats every monomial
    /// free of them).
    BlockElim(usize),
}

/// A polynomial ring `k[v_1..v_n]` with a positive grading and a term order.
#[derive(Clone, PartialEq)]
pub struct Ring<F: Field> {
    field: F,
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
    max_degree: u32,
}

pub type RingRef<F> = Arc<Ring<F>>;

impl<F: Field> Ring<F> {
    pub fn new(field: F, names: Vec<String>, order: MonomialOrder) -> Result<Self> {
        let weights = vec![1; names.len()];
        Ring::with_weights(field, names, weights, order)
    }

    pub fn with_weights(
        field: F,
        names: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<Self> {
        if weights.len() != names.len() {
            return Err(Error::InvalidArgument(format!(
                "{} weights for {} variables",
                weights.len(),
                names.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidArgument(
                "grading weights must be positive".into(),
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::InvalidArgument(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidArgument(format!("duplicate variable {n}")));
            }
        }
        if let MonomialOrder::BlockElim(k) = order {
            if k > names.len() {
                return Err(Error::InvalidArgument(format!(
                    "elimination block of size {k} in a ring with {} variables",
                    names.len()
                )));
            }
        }
        Ok(Ring {
            field,
            names,
            weights,
            order,
            max_degree: DEFAULT_MAX_DEGREE,
        })
    }

    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn into_ref(self) -> RingRef<F> {
        Arc::new(self)
    }

    #[inline]
    pub fn field(&self) -> &F {
        &self.field
    }
    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }
    pub fn weights(&self) -> &[u32] {
        &self.weights
    }
    pub fn order(&self) -> MonomialOrder {
        self.order
    }
    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }
    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `true` when the order refines the weighted degree.
    pub fn is_degree_order(&self) -> bool {
        matches!(self.order, MonomialOrder::Grevlex)
    }

    #[inline]
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.weighted_degree(&self.weights)
    }

    pub fn check_degree(&self, m: &Monomial) -> Result<()> {
        let d = m.total_degree();
        if d > self.max_degree {
            Err(Error::DegreeBound {
                degree: d,
                limit: self.max_degree,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self.order {
            MonomialOrder::Grevlex => grevlex(ea, eb, &self.weights),
            MonomialOrder::Lex => ea.cmp(eb),
            MonomialOrder::BlockElim(k) => grevlex(&ea[..k], &eb[..k], &self.weights[..k])
                .then_with(|| grevlex(&ea[k..], &eb[k..], &self.weights[k..])),
        }
    }

    /// Same variables, field and grading under a different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring<F>> {
        Ring::with_weights(
            self.field.clone(),
            self.names.clone(),
            self.weights.clone(),
            order,
        )
        .map(|r| r.with_max_degree(self.max_degree))
    }

    pub fn same_as(&self, other: &Ring<F>) -> bool {
        self == other
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl<F: Field> fmt::Debug for Ring<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ring(char {}, [{}], {:?})",
            self.field.characteristic(),
            self.names.join(","),
            self.order
        )
    }
}

fn grevlex(a: &[u16], b: &[u16], w: &[u32]) -> Ordering {
    let da: u32 = a.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
    let db: u32 = b.iter().zip(w).map(|(&e, &w)| e as u32 * w).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                // smaller exponent in the last differing variable wins
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::field::PrimeField;

    fn ring(order: MonomialOrder) -> Ring<PrimeField> {
        Ring::new(
            PrimeField::default(),
            vec!["x".into(), "y".into(), "z".into()],
            order,
        )
        .unwrap()
    }

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_examples() {
        let r = ring(MonomialOrder::Grevlex);
        assert_eq!(
            r.cmp_mono(&m(&[2, 0, 0]), &m(&[1, 1, 0])),
            Ordering::Greater
        );
        assert_eq!(r.cmp_mono(&m(&[1, 1, 0]), &m(&[1, 1, 0])), Ordering::Equal);
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp_mono(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(
            r.cmp_mono(&m(&[0, 0, 3]), &m(&[1, 0, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_ignores_degree() {
        let r = ring(MonomialOrder::Lex);
        assert_eq!(
            r.cmp_mono(&m(&[1, 0, 0]), &m(&[0, 3, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let r = ring(MonomialOrder::BlockElim(1));
        assert_eq!(
            r.cmp_mono(&m(&[1, 0, 0]), &m(&[0, 5, 5])),
            Ordering::Greater
        );
        assert_eq!(
            r.cmp_mono(&m(&[0, 2, 0]), &m(&[0, 1, 0])),
            Ordering::Greater
        );
    }

    #[test]
    fn rejects_bad_declarations() {
        let f = PrimeField::default();
        assert!(Ring::new(f, vec!["x".into(), "x".into()], MonomialOrder::Grevlex).is_err());
        assert!(Ring::new(f, vec!["1x".into()], MonomialOrder::Grevlex).is_err());
        assert!(Ring::with_weights(f, vec!["x".into()], vec![0], MonomialOrder::Grevlex).is_err());
    }
}
