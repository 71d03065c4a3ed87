use serde::Serialize;

use super::{ratio_cell_hit, WindowSet};
use crate::padic::{Prime, QpCell, ResidueClass};
use crate::partition::{PartitionHandle, PartitionSpec};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    /// Part `j + 1` of a modular table never holds `n ≡ j (mod p_i^{e_i})`.
    TableAvoidance,
    /// Ratios inside a valuation-parity part have even valuation at `p_i`.
    ValuationParity,
    /// Ratios inside a Legendre part have unit parts that are squares mod `p_i`
    /// (`≡ 1 mod 4` at `p_i = 2`).
    QuadraticCharacter,
}

impl Justification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Justification::TableAvoidance => "table-avoidance",
            Justification::ValuationParity => "valuation-parity",
            Justification::QuadraticCharacter => "quadratic-character",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// No member of the part lies in this class.
    ResidueClass(ResidueClass),
    /// No ratio of two members of the part lies in this cell.
    RatioCell(QpCell),
}

/// A symbolic, window-independent reason that a part (or its ratio set) is
/// not dense at `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AvoidanceCertificate {
    pub p: u64,
    pub part: usize,
    pub obstruction: Obstruction,
    pub justification: Justification,
}

impl AvoidanceCertificate {
    /// Confirms the certificate on a finite window of the part it speaks
    /// about. `false` means the window contradicts it.
    pub fn spot_check(&self, x: &WindowSet) -> Result<bool> {
        match &self.obstruction {
            Obstruction::ResidueClass(class) => {
                let class = class.normalized();
                Ok(!x
                    .elements()
                    .iter()
                    .any(|&n| n % class.modulus() == class.offset()))
            }
            Obstruction::RatioCell(cell) => Ok(ratio_cell_hit(x, cell)?.is_none()),
        }
    }
}

fn check_part(handle: &PartitionHandle, part: usize) -> Result<()> {
    if !(1..=handle.k()).contains(&part) {
        return Err(Error::invalid(
            "part",
            format!("{part} is outside 1..={}", handle.k()),
        ));
    }
    Ok(())
}

/// The residue class a modular-table part provably misses at `p`, if `p` is
/// one of the construction primes.
pub fn find_avoided_class(
    handle: &PartitionHandle,
    part: usize,
    p: u64,
) -> Result<Option<AvoidanceCertificate>> {
    let PartitionSpec::ModularTable(table) = handle.spec() else {
        return Err(Error::NotModular(handle.construction().to_string()));
    };
    check_part(handle, part)?;
    let Some(pp) = table.moduli().iter().find(|m| m.prime().get() == p) else {
        return Ok(None);
    };
    Ok(Some(AvoidanceCertificate {
        p,
        part,
        obstruction: Obstruction::ResidueClass(ResidueClass::new(part as u64 - 1, pp.modulus())?),
        justification: Justification::TableAvoidance,
    }))
}

/// A cell the ratio set of a signature part provably misses at `p`.
///
/// Valuation parity: any cell with odd valuation, here `(1, s = 1)` at
/// precision `w`. Legendre signature: a non-residue cell with `s = 0`; at
/// `p = 2` that is `3 mod 4`, so the precision is raised to at least 2.
/// Modular tables carry no such certificate.
pub fn find_avoided_cell(
    handle: &PartitionHandle,
    part: usize,
    p: u64,
    w: u32,
) -> Result<Option<AvoidanceCertificate>> {
    check_part(handle, part)?;
    let (primes, justification) = match handle.spec() {
        PartitionSpec::ModularTable(_) => return Ok(None),
        PartitionSpec::ValuationParity(s) => (s.primes(), Justification::ValuationParity),
        PartitionSpec::LegendreSignature(s) => (s.primes(), Justification::QuadraticCharacter),
    };
    let Some(&prime) = primes.iter().find(|q| q.get() == p) else {
        return Ok(None);
    };
    let w = w.max(1);
    let cell = match justification {
        Justification::ValuationParity => QpCell::new(p, w, 1, 1)?,
        _ if p == 2 => QpCell::new(2, w.max(2), 3, 0)?,
        _ => QpCell::new(p, w, least_non_residue(prime), 0)?,
    };
    Ok(Some(AvoidanceCertificate {
        p,
        part,
        obstruction: Obstruction::RatioCell(cell),
        justification,
    }))
}

fn least_non_residue(p: Prime) -> u64 {
    (2..p.get())
        .find(|&a| p.legendre(a as i64) == Ok(-1))
        .expect("odd primes have non-residues")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{
        build_legendre_partition, build_modular_partition, build_valuation_parity_partition,
    };

    #[test]
    fn modular_class_certificates() {
        let h = build_modular_partition(3, &[2, 3]).unwrap();
        let cert = find_avoided_class(&h, 1, 2).unwrap().unwrap();
        assert_eq!(
            cert.obstruction,
            Obstruction::ResidueClass(ResidueClass::new(0, 4).unwrap())
        );
        assert_eq!(cert.justification, Justification::TableAvoidance);
        assert_eq!(find_avoided_class(&h, 1, 5), Ok(None));

        let part1 = WindowSet::from_part(&h, 1, 100_000).unwrap();
        assert!(!part1.elements().iter().any(|n| n % 4 == 0));
        assert_eq!(cert.spot_check(&part1), Ok(true));
        // the same class is hit by another part, so the check can fail
        let part2 = WindowSet::from_part(&h, 2, 1_000).unwrap();
        assert_eq!(cert.spot_check(&part2), Ok(false));
    }

    #[test]
    fn class_certificates_need_modular_handles() {
        let h = build_valuation_parity_partition(2, &[2]).unwrap();
        assert!(matches!(
            find_avoided_class(&h, 1, 2),
            Err(Error::NotModular(_))
        ));
        let m = build_modular_partition(2, &[2]).unwrap();
        assert!(find_avoided_class(&m, 3, 2).is_err());
        assert_eq!(find_avoided_cell(&m, 1, 2, 2), Ok(None));
    }

    #[test]
    fn signature_cell_certificates() {
        let vp = build_valuation_parity_partition(4, &[2, 3]).unwrap();
        let c = find_avoided_cell(&vp, 2, 3, 2).unwrap().unwrap();
        assert_eq!(
            c.obstruction,
            Obstruction::RatioCell(QpCell::new(3, 2, 1, 1).unwrap())
        );
        assert_eq!(find_avoided_cell(&vp, 2, 5, 2), Ok(None));

        let leg = build_legendre_partition(4, &[2, 3]).unwrap();
        let c2 = find_avoided_cell(&leg, 1, 2, 1).unwrap().unwrap();
        assert_eq!(
            c2.obstruction,
            Obstruction::RatioCell(QpCell::new(2, 2, 3, 0).unwrap())
        );
        let c3 = find_avoided_cell(&leg, 1, 3, 1).unwrap().unwrap();
        assert_eq!(
            c3.obstruction,
            Obstruction::RatioCell(QpCell::new(3, 1, 2, 0).unwrap())
        );

        let leg7 = build_legendre_partition(2, &[7]).unwrap();
        let c7 = find_avoided_cell(&leg7, 2, 7, 1).unwrap().unwrap();
        // squares mod 7 are {1, 2, 4}
        assert_eq!(
            c7.obstruction,
            Obstruction::RatioCell(QpCell::new(7, 1, 3, 0).unwrap())
        );

        for h in [&vp, &leg, &leg7] {
            let windows = WindowSet::partition_windows(h, 5_000).unwrap();
            for p in h.construction_primes() {
                for (i, x) in windows.iter().enumerate() {
                    let cert = find_avoided_cell(h, i + 1, p.get(), 2).unwrap().unwrap();
                    assert_eq!(cert.spot_check(x), Ok(true));
                }
            }
        }
    }
}
