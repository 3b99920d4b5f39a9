use std::cmp::Ordering;

use crate::monomial::Monomial;

/// A global monomial order.
///
/// `weights` must be positive on every variable. `revlex` lists variable
/// indices; ties in weight are broken reverse-lexicographically, so the last
/// listed variable is the cheapest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weight by `weights`, ties broken by reverse lexicographic order.
    WeightedGrevlex { weights: Vec<i64>, revlex: Vec<usize> },
    /// Block order: total degree in the `eliminate` block first, then weighted grevlex.
    /// Any monomial involving an eliminated variable is larger than every monomial without one.
    Elimination {
        eliminate: Vec<usize>,
        weights: Vec<i64>,
        revlex: Vec<usize>,
    },
}

impl MonomialOrder {
    /// Weighted grevlex on variables `0..weights.len()` in their natural order.
    pub fn grevlex(weights: Vec<i64>) -> Self {
        let revlex = (0..weights.len()).collect();
        MonomialOrder::WeightedGrevlex { weights, revlex }
    }

    /// Weighted grevlex where `last` becomes the cheapest variable.
    pub fn grevlex_with_last(weights: Vec<i64>, last: usize) -> Self {
        let mut revlex: Vec<usize> = (0..weights.len()).filter(|&i| i != last).collect();
        revlex.push(last);
        MonomialOrder::WeightedGrevlex { weights, revlex }
    }

    pub fn elimination(eliminate: Vec<usize>, weights: Vec<i64>) -> Self {
        let revlex = (0..weights.len()).collect();
        MonomialOrder::Elimination {
            eliminate,
            weights,
            revlex,
        }
    }

    pub fn nvars(&self) -> usize {
        match self {
            MonomialOrder::WeightedGrevlex { weights, .. } => weights.len(),
            MonomialOrder::Elimination { weights, .. } => weights.len(),
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::WeightedGrevlex { weights, revlex } => grevlex_cmp(weights, revlex, a, b),
            MonomialOrder::Elimination {
                eliminate,
                weights,
                revlex,
            } => {
                let da: u32 = eliminate.iter().map(|&i| a.exp(i) as u32).sum();
                let db: u32 = eliminate.iter().map(|&i| b.exp(i) as u32).sum();
                da.cmp(&db).then_with(|| grevlex_cmp(weights, revlex, a, b))
            }
        }
    }
}

#[inline]
fn grevlex_cmp(weights: &[i64], revlex: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    let wa = a.weight(weights);
    let wb = b.weight(weights);
    if wa != wb {
        return wa.cmp(&wb);
    }
    for &i in revlex.iter().rev() {
        let (ea, eb) = (a.exp(i), b.exp(i));
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::grevlex(vec![1, 1, 1]);
        // x0*x2 < x1^2 in grevlex (smaller power of the last variable wins)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 0]), &m(&[0, 0, 1])), Ordering::Less);
    }

    #[test]
    fn elimination_block_dominates() {
        let o = MonomialOrder::elimination(vec![2], vec![1, 1, 1]);
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn weights_respected() {
        let o = MonomialOrder::grevlex(vec![1, 3]);
        assert_eq!(o.cmp(&m(&[2, 0]), &m(&[0, 1])), Ordering::Less);
    }
}
