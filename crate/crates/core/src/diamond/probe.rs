use std::fmt;

use rayon::prelude::*;

use super::{extract, DiamondSpec, HalfSide, ProductMatrix};
use crate::arith::matrix::{rank_mod_p, rank_over_field};
use crate::arith::{Field, Fp, Matrix, Rational};
use crate::error::DiamondError;

/// Scalars whose matrices the probes can rank.
pub trait ProbeScalar: Field {
    fn matrix_rank(m: Matrix<Self>) -> usize;
}

impl ProbeScalar for Fp {
    fn matrix_rank(m: Matrix<Self>) -> usize {
        let Some(p) = m.first().and_then(|r| r.first()).map(|x| x.modulus()) else {
            return 0;
        };
        let mut raw: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(Fp::value).collect()).collect();
        rank_mod_p(&mut raw, p)
    }
}

impl ProbeScalar for Rational {
    fn matrix_rank(m: Matrix<Self>) -> usize {
        rank_over_field(&m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProbeMode {
    Diamond,
    Half,
}

impl fmt::Display for ProbeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProbeMode::Diamond => "diamond",
            ProbeMode::Half => "half",
        })
    }
}

/// One family of probe sub-matrices: a parity of the offsets, or for half
/// mode a side together with the residue mod 4 of that side's offsets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProbeClass {
    Parity(u8),
    Half { side: HalfSide, residue: u8 },
}

impl fmt::Display for ProbeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbeClass::Parity(q) => write!(f, "parity={q}"),
            ProbeClass::Half { side, residue } => write!(f, "side={side} residue={residue}"),
        }
    }
}

pub fn probe_classes(mode: ProbeMode) -> Vec<ProbeClass> {
    match mode {
        ProbeMode::Diamond => vec![ProbeClass::Parity(0), ProbeClass::Parity(1)],
        ProbeMode::Half => [HalfSide::Left, HalfSide::Right]
            .into_iter()
            .flat_map(|side| (0..4).map(move |residue| ProbeClass::Half { side, residue }))
            .collect(),
    }
}

/// Square contiguous probe of size `n` per class. Diagonal offsets stay
/// clear of 0: in `s x s` the diagonals `c` and `-c` hold the same entries,
/// so straddling 0 would repeat rows. Anti-diagonal offsets are centred at
/// `2 * centre`, running over `[-n/2, n - n/2)` steps, so smaller probes are
/// nested in larger ones.
pub fn probe_specs(mode: ProbeMode, n: usize, centre: i64) -> Vec<(ProbeClass, DiamondSpec)> {
    let start = -((n / 2) as i64);
    probe_classes(mode)
        .into_iter()
        .map(|class| {
            let spec = match class {
                ProbeClass::Parity(q) => {
                    let q = q as i64;
                    DiamondSpec::contiguous(2 - q, 2 * centre + q + 2 * start, n, n, HalfSide::None)
                }
                ProbeClass::Half { side, residue } => {
                    let r = residue as i64;
                    match side {
                        HalfSide::Right => {
                            let delta = (r - 2 * centre).rem_euclid(4);
                            DiamondSpec::contiguous(2 + r % 2, 2 * centre + delta + 4 * start, n, n, side)
                        }
                        _ => DiamondSpec::contiguous(if r < 2 { r + 4 } else { r }, 2 * centre + r % 2 + 2 * start, n, n, side),
                    }
                }
            };
            (class, spec.expect("probe offsets are valid"))
        })
        .collect()
}

/// Index interval that must be realised in both sequences for a probe.
pub fn probe_window(mode: ProbeMode, n: usize, centre: i64) -> (i64, i64) {
    let mut lo = i64::MAX;
    let mut hi = i64::MIN;
    for (_, spec) in probe_specs(mode, n, centre) {
        if let Some(((r0, r1), (c0, c1))) = spec.extent() {
            lo = lo.min(r0).min(c0);
            hi = hi.max(r1).max(c1);
        }
    }
    (lo, hi)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassRank {
    pub class: ProbeClass,
    pub spec: DiamondSpec,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeReport {
    pub mode: ProbeMode,
    pub size: usize,
    pub centre: i64,
    pub classes: Vec<ClassRank>,
    /// Largest rank over the classes; a lower bound for the
    /// (half-)diamond rank of the product matrix.
    pub rank: usize,
    pub best: DiamondSpec,
}

pub fn rank_probe<T: ProbeScalar>(
    m: &ProductMatrix<T>,
    mode: ProbeMode,
    size: usize,
    centre: i64,
) -> Result<ProbeReport, DiamondError> {
    if size == 0 {
        return Err(DiamondError::InvalidSpec("probe size must be positive".into()));
    }
    let (lo, hi) = probe_window(mode, size, centre);
    for seq in [m.s, m.t] {
        if seq.lo() > lo || seq.hi() < hi {
            return Err(DiamondError::WindowTooSmall { lo: seq.lo(), hi: seq.hi() });
        }
    }
    let classes: Vec<ClassRank> = probe_specs(mode, size, centre)
        .into_par_iter()
        .map(|(class, spec)| {
            let mat = extract(m, &spec)?;
            Ok(ClassRank { class, rank: T::matrix_rank(mat), spec })
        })
        .collect::<Result<_, DiamondError>>()?;
    let best = classes.iter().max_by_key(|c| c.rank).expect("at least two classes").clone();
    Ok(ProbeReport { mode, size, centre, rank: best.rank, best: best.spec, classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;
    use crate::sequences::unit_sequence_fp;

    #[test]
    fn specs_are_nested_and_classes_distinct() {
        for mode in [ProbeMode::Diamond, ProbeMode::Half] {
            let a = probe_specs(mode, 7, 3);
            let b = probe_specs(mode, 8, 3);
            for ((ca, sa), (cb, sb)) in a.iter().zip(&b) {
                assert_eq!(ca, cb);
                assert!(sa.is_contiguous());
                assert!(sa.diagonals().iter().all(|d| sb.diagonals().contains(d)));
                assert!(sa.anti_diagonals().iter().all(|d| sb.anti_diagonals().contains(d)));
            }
        }
        let h = probe_specs(ProbeMode::Half, 5, 1);
        assert_eq!(h.len(), 8);
        for (class, spec) in &h {
            if let ProbeClass::Half { side, residue } = class {
                let e = if *side == HalfSide::Left { spec.diagonals() } else { spec.anti_diagonals() };
                assert_eq!(e[0].rem_euclid(4), *residue as i64);
            }
        }
    }

    #[test]
    fn unit_ranks() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        for (n, mode, want) in [(4, ProbeMode::Diamond, 2), (6, ProbeMode::Diamond, 4), (7, ProbeMode::Half, 4)] {
            let mut s = unit_sequence_fp(n, f).unwrap();
            s.extend_to(-70, 70);
            let t = s.terms();
            let r = rank_probe(&ProductMatrix::new(&t, &t), mode, 20, 0).unwrap();
            assert_eq!(r.rank, want, "order {n}");
        }
        let mut s = unit_sequence_fp(6, f).unwrap();
        s.extend_to(-5, 5);
        let t = s.terms();
        assert!(matches!(
            rank_probe(&ProductMatrix::new(&t, &t), ProbeMode::Diamond, 20, 0),
            Err(DiamondError::WindowTooSmall { .. })
        ));
    }
}
