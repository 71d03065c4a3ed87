use crate::padic::{Prime, PrimePower};
use crate::{Error, Result};

use super::{check_distinct_primes, PartitionHandle, PartitionSpec};

/// Largest assignment table the builders will allocate by default.
pub const DEFAULT_TABLE_CAP: u64 = 1 << 22;

/// Part assignment for every residue vector in
/// `V = {0..p_1^{e_1}} × … × {0..p_{k-1}^{e_{k-1}}}`.
///
/// Vectors are indexed in lexicographic order (first component most
/// significant); `table[idx]` is the zero-based index `j` of the set `R_j`,
/// i.e. the vector belongs to part `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularTable {
    moduli: Vec<PrimePower>,
    table: Vec<u32>,
}

impl ModularTable {
    pub(crate) fn from_parts(moduli: Vec<PrimePower>, table: Vec<u32>) -> Self {
        ModularTable { moduli, table }
    }

    pub fn moduli(&self) -> &[PrimePower] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// `(vector, part)` pairs in lexicographic vector order, parts one-based.
    pub fn entries(&self) -> impl Iterator<Item = (Vec<u64>, usize)> + '_ {
        self.table
            .iter()
            .enumerate()
            .map(|(idx, &j)| (self.vector_at(idx), j as usize + 1))
    }

    pub(crate) fn vector_at(&self, mut idx: usize) -> Vec<u64> {
        let mut v = vec![0; self.moduli.len()];
        for (slot, m) in v.iter_mut().zip(&self.moduli).rev() {
            let m = m.modulus() as usize;
            *slot = (idx % m) as u64;
            idx /= m;
        }
        v
    }

    pub(crate) fn index_of(&self, vector: &[u64]) -> usize {
        vector
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&r, m)| {
                acc * m.modulus() as usize + r as usize
            })
    }

    #[inline]
    pub(crate) fn part_of(&self, n: u64) -> usize {
        let idx = self.moduli.iter().fold(0usize, |acc, m| {
            acc * m.modulus() as usize + (n % m.modulus()) as usize
        });
        self.table[idx] as usize + 1
    }

    pub(crate) fn describe(&self, k: usize) -> String {
        let moduli: Vec<String> = self
            .moduli
            .iter()
            .map(|m| format!("{}^{}", m.prime(), m.exponent()))
            .collect();
        format!(
            "k={k}, moduli [{}], {} table vectors",
            moduli.join(", "),
            self.table.len()
        )
    }
}

/// Table size `∏ M_i`, checked against `cap`.
pub(crate) fn table_size(moduli: &[PrimePower], cap: u64) -> Result<usize> {
    let mut size: u128 = 1;
    for m in moduli {
        size = size.saturating_mul(m.modulus() as u128);
    }
    if size > cap as u128 {
        return Err(Error::TableTooLarge { size, cap });
    }
    Ok(size as usize)
}

pub fn build_modular_partition(k: usize, primes: &[u64]) -> Result<PartitionHandle> {
    build_modular_partition_with_cap(k, primes, DEFAULT_TABLE_CAP)
}

/// Greedy partition of the residue vectors: each vector goes to `R_j` for the
/// smallest `j ∈ 0..k` that is not one of its components. A vector has
/// `k - 1` components, so such a `j` always exists.
pub fn build_modular_partition_with_cap(
    k: usize,
    primes: &[u64],
    cap: u64,
) -> Result<PartitionHandle> {
    if k == 0 {
        return Err(Error::invalid("k", "must be at least 1"));
    }
    if primes.len() != k - 1 {
        return Err(Error::WrongPrimeCount {
            expected: k - 1,
            got: primes.len(),
        });
    }
    let primes: Vec<Prime> = check_distinct_primes(primes)?;
    let moduli = primes
        .into_iter()
        .map(|p| PrimePower::at_least(p, k as u64))
        .collect::<Result<Vec<_>>>()?;
    let size = table_size(&moduli, cap)?;

    let mut shell = ModularTable::from_parts(moduli, Vec::new());
    let mut seen = vec![false; k];
    let table = (0..size)
        .map(|idx| {
            seen.iter_mut().for_each(|s| *s = false);
            for r in shell.vector_at(idx) {
                if (r as usize) < k {
                    seen[r as usize] = true;
                }
            }
            seen.iter()
                .position(|s| !s)
                .expect("k-1 components leave a value free") as u32
        })
        .collect();
    shell.table = table;
    Ok(PartitionHandle::from_spec(
        PartitionSpec::ModularTable(shell),
        k,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(h: &PartitionHandle) -> &ModularTable {
        match h.spec() {
            PartitionSpec::ModularTable(t) => t,
            _ => unreachable!(),
        }
    }

    #[test]
    fn k3_primes_2_3() {
        let h = build_modular_partition(3, &[2, 3]).unwrap();
        let t = table(&h);
        let exps: Vec<u32> = t.moduli().iter().map(|m| m.exponent()).collect();
        assert_eq!(exps, vec![2, 1]);
        assert_eq!(t.len(), 12);
        // (0, 1): values 0 and 1 occur, so the vector lands in R_2 = part 3
        assert_eq!(t.table[t.index_of(&[0, 1])], 2);
        assert_eq!(t.table[t.index_of(&[1, 0])], 2);
        assert_eq!(t.table[t.index_of(&[3, 2])], 0);
        assert_eq!(t.table[t.index_of(&[0, 2])], 1);
        let first: Vec<(Vec<u64>, usize)> = t.entries().take(4).collect();
        assert_eq!(
            first,
            vec![
                (vec![0, 0], 2),
                (vec![0, 1], 3),
                (vec![0, 2], 2),
                (vec![1, 0], 3)
            ]
        );
    }

    #[test]
    fn k2_is_odd_even_split() {
        let h = build_modular_partition(2, &[2]).unwrap();
        let t = table(&h);
        assert_eq!(t.table, vec![1, 0]);
        assert_eq!(h.classify(7), Ok(1));
        assert_eq!(h.classify(8), Ok(2));
    }

    #[test]
    fn trivial_partition() {
        let h = build_modular_partition(1, &[]).unwrap();
        assert_eq!(table(&h).len(), 1);
        assert!((1..1000).all(|n| h.classify(n) == Ok(1)));
    }

    #[test]
    fn each_part_misses_its_class_at_every_prime() {
        for (k, primes) in [
            (2, vec![3]),
            (3, vec![2, 3]),
            (4, vec![2, 3, 5]),
            (5, vec![7, 2, 3, 5]),
        ] {
            let h = build_modular_partition(k, &primes).unwrap();
            let moduli: Vec<u64> = table(&h).moduli().iter().map(|m| m.modulus()).collect();
            for n in 1..=50_000u64 {
                let j = h.classify(n).unwrap() as u64 - 1;
                for m in &moduli {
                    assert_ne!(
                        n % m,
                        j,
                        "k={k} n={n} lands in part {} yet n ≡ {j} mod {m}",
                        j + 1
                    );
                }
            }
        }
    }

    #[test]
    fn builder_errors() {
        assert_eq!(
            build_modular_partition(3, &[2, 2]),
            Err(Error::DuplicatePrime(2))
        );
        assert_eq!(
            build_modular_partition(3, &[2]),
            Err(Error::WrongPrimeCount {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(build_modular_partition(2, &[9]), Err(Error::NotPrime(9)));
        assert!(build_modular_partition(0, &[]).is_err());
        assert!(matches!(
            build_modular_partition_with_cap(4, &[2, 3, 5], 100),
            Err(Error::TableTooLarge {
                size: 180,
                cap: 100
            })
        ));
    }
}
