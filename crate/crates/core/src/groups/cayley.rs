//! Cayley tables: abstract finite groups as multiplication tables.
//!
//! Tables are validated on construction: index 0 must be the identity, every
//! row and column must be a permutation (Latin square), and associativity is
//! checked over all triples. Built-in presets cover the cyclic, dihedral and
//! quaternion families used by the regular-representation checks.

use super::{GroupError, MatrixGroup};

/// Validated multiplication table of a finite group.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    label: String,
    order: usize,
    /// Row-major: `table[g * order + h]` is the index of `g · h`.
    table: Vec<usize>,
    element_orders: Vec<usize>,
}

impl CayleyTable {
    pub fn new(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidCayley {
                reason: "order must be at least 1".into(),
            });
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidCayley {
                reason: format!(
                    "expected {} entries for order {order}, got {}",
                    order * order,
                    table.len()
                ),
            });
        }
        if let Some(&bad) = table.iter().find(|&&e| e >= order) {
            return Err(GroupError::InvalidCayley {
                reason: format!("entry {bad} out of range for order {order}"),
            });
        }
        for g in 0..order {
            if table[g] != g || table[g * order] != g {
                return Err(GroupError::InvalidCayley {
                    reason: "index 0 is not a two-sided identity".into(),
                });
            }
        }
        for g in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for h in 0..order {
                let r = table[g * order + h];
                let c = table[h * order + g];
                if row_seen[r] {
                    return Err(GroupError::InvalidCayley {
                        reason: format!("row {g} repeats element {r}"),
                    });
                }
                if col_seen[c] {
                    return Err(GroupError::InvalidCayley {
                        reason: format!("column {g} repeats element {c}"),
                    });
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    let bc = table[b * order + c];
                    if table[ab * order + c] != table[a * order + bc] {
                        return Err(GroupError::InvalidCayley {
                            reason: format!("associativity fails on triple ({a}, {b}, {c})"),
                        });
                    }
                }
            }
        }

        let mut element_orders = Vec::with_capacity(order);
        for g in 0..order {
            let mut power = g;
            let mut k = 1usize;
            while power != 0 {
                power = table[power * order + g];
                k += 1;
            }
            element_orders.push(k);
        }
        Ok(Self {
            label: label.into(),
            order,
            table,
            element_orders,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn product(&self, g: usize, h: usize) -> usize {
        self.table[g * self.order + h]
    }

    /// Multiplicative order of each element, indexed like the table.
    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    /// Cyclic group of order `n`: entry `(g, h) = g + h mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mut table = vec![0usize; n * n];
        for g in 0..n {
            for h in 0..n {
                table[g * n + h] = (g + h) % n;
            }
        }
        Self::new(format!("cyclic:{n}"), n, table).expect("cyclic table is a group")
    }

    /// Dihedral group of order `2n` with elements `r^i s^j` indexed as
    /// `j*n + i`, using `s r^i = r^{-i} s`.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 1);
        let order = 2 * n;
        let index = |i: usize, j: usize| j * n + i;
        let mut table = vec![0usize; order * order];
        for i1 in 0..n {
            for j1 in 0..2 {
                for i2 in 0..n {
                    for j2 in 0..2 {
                        // (r^i1 s^j1)(r^i2 s^j2) = r^{i1 + (-1)^{j1} i2} s^{j1+j2}
                        let i = if j1 == 0 {
                            (i1 + i2) % n
                        } else {
                            (i1 + n - i2 % n) % n
                        };
                        let j = (j1 + j2) % 2;
                        table[index(i1, j1) * order + index(i2, j2)] = index(i, j);
                    }
                }
            }
        }
        Self::new(format!("dihedral:{n}"), order, table).expect("dihedral table is a group")
    }

    /// Quaternion group of order 8 with elements `r^k s^j` indexed as
    /// `j*4 + k`, using `r^4 = 1`, `s^2 = r^2`, `s r^k = r^{-k} s`.
    pub fn quaternion() -> Self {
        let order = 8;
        let index = |k: usize, j: usize| j * 4 + k;
        let mut table = vec![0usize; order * order];
        for a in 0..4 {
            for b in 0..2 {
                for c in 0..4 {
                    for d in 0..2 {
                        let signed_c = if b == 0 { c } else { 4 - c % 4 };
                        let extra = if b == 1 && d == 1 { 2 } else { 0 };
                        let k = (a + signed_c + extra) % 4;
                        let j = (b + d) % 2;
                        table[index(a, b) * order + index(c, d)] = index(k, j);
                    }
                }
            }
        }
        Self::new("quaternion", order, table).expect("quaternion table is a group")
    }

    /// Extract the multiplication table of an explicit matrix group.
    pub fn from_matrix_group(group: &MatrixGroup) -> Result<Self, GroupError> {
        let table = group.multiplication_table()?;
        Self::new(group.name(), group.order(), table)
    }

    /// Parse the plain-text table format: first line the order `N`, then
    /// `N` lines of `N` whitespace-separated 0-based indices.
    pub fn parse(label: impl Into<String>, text: &str) -> Result<Self, GroupError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().ok_or_else(|| GroupError::InvalidCayley {
            reason: "empty table file".into(),
        })?;
        let order: usize = first
            .trim()
            .parse()
            .map_err(|_| GroupError::InvalidCayley {
                reason: format!("first line must be the order, got '{}'", first.trim()),
            })?;
        let mut table = Vec::with_capacity(order * order);
        for (row_no, line) in lines.enumerate() {
            if row_no >= order {
                return Err(GroupError::InvalidCayley {
                    reason: format!("more than {order} table rows"),
                });
            }
            let entries: Result<Vec<usize>, _> = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect();
            let entries = entries.map_err(|_| GroupError::InvalidCayley {
                reason: format!("row {row_no} contains a non-integer token"),
            })?;
            if entries.len() != order {
                return Err(GroupError::InvalidCayley {
                    reason: format!(
                        "row {row_no} has {} entries, expected {order}",
                        entries.len()
                    ),
                });
            }
            table.extend(entries);
        }
        if table.len() != order * order {
            return Err(GroupError::InvalidCayley {
                reason: format!("expected {order} rows, got {}", table.len() / order.max(1)),
            });
        }
        Self::new(label, order, table)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate_and_report_orders() {
        let c6 = CayleyTable::cyclic(6);
        assert_eq!(c6.element_orders(), &[1, 6, 3, 2, 3, 6]);

        let d4 = CayleyTable::dihedral(4);
        assert_eq!(d4.order(), 8);
        // rotations r^0..r^3 have orders 1,4,2,4; all reflections order 2
        assert_eq!(d4.element_orders(), &[1, 4, 2, 4, 2, 2, 2, 2]);

        let q8 = CayleyTable::quaternion();
        assert_eq!(q8.order(), 8);
        // only identity and r^2 have order ≤ 2 in Q8
        assert_eq!(q8.element_orders(), &[1, 4, 2, 4, 4, 4, 4, 4]);
    }

    #[test]
    fn quaternion_table_matches_irrep_structure() {
        let from_matrices =
            CayleyTable::from_matrix_group(&super::super::quaternion_irrep()).unwrap();
        let preset = CayleyTable::quaternion();
        // same multiset of element orders even though indexing differs
        let mut a = from_matrices.element_orders().to_vec();
        let mut b = preset.element_orders().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(CayleyTable::new("z2", 2, vec![0, 1, 1, 0]).is_ok());

        // not a Latin square
        let err = CayleyTable::new("bad", 2, vec![0, 1, 1, 1]).unwrap_err();
        assert!(matches!(err, GroupError::InvalidCayley { .. }));

        // identity not at 0
        let err = CayleyTable::new("bad", 2, vec![1, 0, 0, 1]).unwrap_err();
        assert!(matches!(err, GroupError::InvalidCayley { .. }));

        // Latin square that is not associative: 5-element quasigroup
        let table = vec![
            0, 1, 2, 3, 4, //
            1, 0, 3, 4, 2, //
            2, 4, 0, 1, 3, //
            3, 2, 4, 0, 1, //
            4, 3, 1, 2, 0,
        ];
        let err = CayleyTable::new("bad", 5, table).unwrap_err();
        match err {
            GroupError::InvalidCayley { reason } => {
                assert!(reason.contains("associativity"), "{reason}")
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn parses_text_format() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n";
        let table = CayleyTable::parse("file", text).unwrap();
        assert_eq!(table.order(), 3);
        assert_eq!(table.product(1, 2), 0);

        assert!(CayleyTable::parse("file", "").is_err());
        assert!(CayleyTable::parse("file", "2\n0 1\n").is_err());
        assert!(CayleyTable::parse("file", "2\n0 1\n1 x\n").is_err());
        assert!(CayleyTable::parse("file", "2\n0 1 0\n1 0 1\n").is_err());
    }
}
