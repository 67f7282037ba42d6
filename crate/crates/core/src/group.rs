//! Finite groups given by Cayley tables.

use crate::error::{Error, Result};

/// A finite group presented by its multiplication table.
///
/// Elements are indices `0..order`; `table[a][b]` is the product `a * b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(order: usize, table: Vec<usize>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::invalid("Cayley table has the wrong shape"));
        }
        if table.iter().any(|&x| x >= order) {
            return Err(Error::invalid("Cayley table entry out of range"));
        }
        // locate a two-sided identity
        let identity = (0..order)
            .find(|&e| (0..order).all(|a| table[e * order + a] == a && table[a * order + e] == a))
            .ok_or_else(|| Error::invalid("Cayley table has no identity"))?;
        // inverses
        let mut inverses = vec![usize::MAX; order];
        for a in 0..order {
            let inv = (0..order)
                .find(|&b| table[a * order + b] == identity && table[b * order + a] == identity)
                .ok_or_else(|| Error::invalid(format!("element {a} has no inverse")))?;
            inverses[a] = inv;
        }
        // associativity, exhaustively (orders here are tiny)
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    let ab_c = table[table[a * order + b] * order + c];
                    let a_bc = table[a * order + table[b * order + c]];
                    if ab_c != a_bc {
                        return Err(Error::invalid(format!(
                            "Cayley table not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            table: vec![0],
            identity: 0,
            inverses: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = (a + b) % n;
            }
        }
        FiniteGroup {
            order: n,
            table,
            identity: 0,
            inverses: (0..n).map(|a| (n - a) % n).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_two() {
        let g = FiniteGroup::cyclic(2);
        assert_eq!(g.order(), 2);
        assert_eq!(g.mul(1, 1), 0);
        assert_eq!(g.inv(1), 1);
        assert_eq!(g.identity(), 0);
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(FiniteGroup::from_table(2, vec![0, 1, 1]).is_err());
        // Z/4 passes full validation
        let z4 = FiniteGroup::cyclic(4);
        assert!(FiniteGroup::from_table(4, z4.table().to_vec()).is_ok());
    }
}
