//! Finitely presented augmented algebras `k<X>/(R)` together with the two
//! orders used to study them.

use crate::error::Error;
use crate::expr::parse_poly;
use crate::field::CoefficientField;
use crate::poly::Poly;
use crate::words::{Alphabet, OrderSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct Presentation {
    alphabet: Alphabet,
    field: CoefficientField,
    relations: Vec<Poly>,
    /// Admissible order for classical (max-term) rewriting.
    order_max: OrderSpec,
    /// Admissible N-order for series (min-term) rewriting.
    order_min: OrderSpec,
    /// Set when the presentation was built as a parafree extension of a free
    /// algebra of this rank.
    parafree_rank: Option<usize>,
}

impl Presentation {
    /// Relations must be nonzero, lie in the augmentation ideal and use the
    /// presentation's field; both orders must cover the alphabet.
    pub fn new(
        alphabet: Alphabet,
        field: CoefficientField,
        relations: Vec<Poly>,
        order_max: OrderSpec,
        order_min: OrderSpec,
    ) -> Result<Self, Error> {
        for order in [&order_max, &order_min] {
            if order.num_letters() != alphabet.len() {
                return Err(Error::Precondition(format!(
                    "order covers {} letters but the alphabet has {}",
                    order.num_letters(),
                    alphabet.len()
                )));
            }
        }
        for (i, r) in relations.iter().enumerate() {
            if r.field() != field {
                return Err(Error::Precondition(format!("relation {i} is over {}", r.field().name())));
            }
            if r.is_zero() {
                return Err(Error::Precondition(format!("relation {i} is zero")));
            }
            if !r.constant_term().is_zero() {
                return Err(Error::Precondition(format!(
                    "relation {i} has nonzero constant term {}",
                    r.constant_term()
                )));
            }
            if let Some(l) = r.support().filter_map(|w| w.max_letter()).max() {
                if usize::from(l) >= alphabet.len() {
                    return Err(Error::Precondition(format!("relation {i} uses an unknown letter")));
                }
            }
        }
        Ok(Presentation { alphabet, field, relations, order_max, order_min, parafree_rank: None })
    }

    /// Convenience constructor from relation strings.
    pub fn parse(
        alphabet: Alphabet,
        field: CoefficientField,
        relations: &[&str],
        order_max: OrderSpec,
        order_min: OrderSpec,
    ) -> Result<Self, Error> {
        let rels = relations.iter().map(|s| parse_poly(s, &alphabet, field)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(alphabet, field, rels, order_max, order_min)
    }

    pub fn with_parafree_rank(mut self, rank: usize) -> Self {
        self.parafree_rank = Some(rank);
        self
    }

    /// Free algebra on `alphabet`, deg-lex in alphabet precedence for both
    /// orders.
    pub fn free(alphabet: Alphabet, field: CoefficientField) -> Result<Self, Error> {
        let o = OrderSpec::deg_lex(alphabet.precedence().to_vec())?;
        Presentation::new(alphabet, field, Vec::new(), o.clone(), o)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn order_max(&self) -> &OrderSpec {
        &self.order_max
    }

    pub fn order_min(&self) -> &OrderSpec {
        &self.order_min
    }

    pub fn parafree_rank(&self) -> Option<usize> {
        self.parafree_rank
    }

    /// True when every relation is homogeneous for the alphabet weights.
    pub fn is_weight_homogeneous(&self) -> bool {
        self.relations.iter().all(|r| {
            let mut weights = r.support().map(|w| self.alphabet.word_weight(w));
            let first = weights.next();
            weights.all(|w| Some(w) == first)
        })
    }

    pub fn render_relations(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.render(&self.alphabet, Some(&self.order_max))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_constant_terms() {
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let o = OrderSpec::deg_lex(vec![0, 1]).unwrap();
        let err = Presentation::parse(a.clone(), CoefficientField::Rational, &["x + 1"], o.clone(), o.clone());
        assert!(matches!(err, Err(Error::Precondition(m)) if m.contains("constant")));
        let ok = Presentation::parse(a, CoefficientField::Rational, &["x*y - y*x"], o.clone(), o).unwrap();
        assert!(ok.is_weight_homogeneous());
    }

    #[test]
    fn rejects_order_of_wrong_size() {
        let a = Alphabet::unweighted(["x", "y"]).unwrap();
        let o3 = OrderSpec::deg_lex(vec![0, 1, 2]).unwrap();
        assert!(Presentation::new(a, CoefficientField::Rational, vec![], o3.clone(), o3).is_err());
    }
}
