//! Randomised rank experiments on Gale-Robinson sequences over prime
//! fields, rank predictions for exceptional types, and nonstrict-order fits
//! of decimated sequences.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::arith::fp::random_prime;
use crate::arith::matrix::nullspace_over_field;
use crate::arith::rational::rat_frac;
use crate::arith::{Field, Fp, PrimeField, Rational};
use crate::diamond::{hull_check_product, probe_window, rank_probe, HullRegion, ProbeMode, ProductMatrix};
use crate::error::ExperimentError;
use crate::sequences::{decimate, gale_robinson, GRType, Terms};

/// Resampling budget for a trial that hits a zero term.
pub const MAX_RESAMPLES: usize = 10;

/// `2^m` with `n = 2m + 2` or `n = 2m + 3`.
pub fn default_rank(n: usize) -> Result<u64, ExperimentError> {
    if n < 4 {
        return Err(ExperimentError::InvalidOrder(n));
    }
    Ok(1 << ((n - 2) / 2))
}

pub fn default_mode(n: usize) -> ProbeMode {
    if n % 2 == 0 {
        ProbeMode::Diamond
    } else {
        ProbeMode::Half
    }
}

/// `eta(2k + 1) = eta(2k + 2) = (k + 1) / 2^k`.
pub fn eta(g: u64) -> Result<Rational, ExperimentError> {
    if g < 5 {
        return Err(ExperimentError::EtaRange(g));
    }
    let k = (g - 1) / 2;
    Ok(rat_frac(k as i64 + 1, 1i64 << k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankClass {
    Default,
    Exceptional { g: u64 },
    /// Two pairs of entries share a gcd of at least 5.
    Unknown,
}

impl fmt::Display for RankClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankClass::Default => f.write_str("default"),
            RankClass::Exceptional { g } => write!(f, "exceptional(g={g})"),
            RankClass::Unknown => f.write_str("unknown"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub default: u64,
    pub class: RankClass,
    pub rank: Option<u64>,
}

pub fn predicted_rank(t: GRType) -> Result<Prediction, ExperimentError> {
    if !t.is_proper() {
        return Err(ExperimentError::NotProper(t.to_string()));
    }
    let default = default_rank(t.order())?;
    let [a, b, c] = t.entries().map(|x| x as u64);
    let big: Vec<u64> =
        [(a, b), (a, c), (b, c)].iter().map(|&(x, y)| num_integer::gcd(x, y)).filter(|&g| g >= 5).collect();
    let (class, rank) = match big.as_slice() {
        [] => (RankClass::Default, Some(default)),
        [g] => {
            let e = eta(*g)?;
            let r = e * Rational::from_integer(default.into());
            let rank = r.is_integer().then(|| r.to_integer().try_into().expect("fits"));
            (RankClass::Exceptional { g: *g }, rank)
        }
        _ => (RankClass::Unknown, None),
    };
    Ok(Prediction { default, class, rank })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub gr: GRType,
    pub trials: usize,
    /// Coefficients and seed terms are drawn from this box.
    pub sample_box: (u64, u64),
    pub primes: (u64, u64),
    pub probe: usize,
    pub seed: u64,
    pub centre: i64,
    pub mode: ProbeMode,
    /// Run the window certificate at the measured rank, on diagonals at
    /// least `n` away from the main one.
    pub certify: bool,
}

pub const DEFAULT_SEED: u64 = 20_100;

impl ExperimentConfig {
    pub fn new(gr: GRType) -> Result<Self, ExperimentError> {
        let n = gr.order();
        let probe = (2 * default_rank(n)? as usize).max(40);
        Ok(ExperimentConfig {
            gr,
            trials: 5,
            sample_box: (1, 100),
            primes: (100_000, 1_000_000),
            probe,
            seed: DEFAULT_SEED,
            centre: 0,
            mode: default_mode(n),
            certify: true,
        })
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::InvalidConfig(m));
        let floor = 2 * default_rank(self.gr.order())? as usize;
        if self.probe < floor {
            return bad(format!("probe {} is below {floor}", self.probe));
        }
        if self.primes.0 > self.primes.1 || self.primes.1 < 3 {
            return bad(format!("prime interval {}..{} is empty", self.primes.0, self.primes.1));
        }
        if self.sample_box.0 > self.sample_box.1 {
            return bad(format!("sample box {}..{} is empty", self.sample_box.0, self.sample_box.1));
        }
        if self.trials == 0 {
            return bad("no trials".into());
        }
        Ok(())
    }

    /// Indices realised per trial.
    pub fn window(&self) -> (i64, i64) {
        probe_window(self.mode, self.probe, self.centre)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub prime: u64,
    pub coeffs: Vec<u64>,
    pub seed: Vec<u64>,
    /// `(class label, rank)` per probe class.
    pub ranks: Vec<(String, usize)>,
    pub rank: usize,
    pub certified: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialRecord {
    pub index: usize,
    pub attempts: usize,
    pub outcome: Option<TrialOutcome>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub prediction: Option<Prediction>,
    pub trials: Vec<TrialRecord>,
    pub modal_rank: usize,
    pub agreement: usize,
}

impl ExperimentReport {
    pub fn completed(&self) -> usize {
        self.trials.iter().filter(|t| t.outcome.is_some()).count()
    }

    /// Every completed trial measured the predicted rank.
    pub fn matches_prediction(&self) -> bool {
        let want = self.prediction.as_ref().and_then(|p| p.rank);
        want.is_some_and(|r| r as usize == self.modal_rank && self.agreement == self.completed())
    }
}

fn join<T: fmt::Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "# experiment type={} n={} mode={} trials={} probe={} centre={} box={}..{} primes={}..{} seed={} certify={}",
            c.gr,
            c.gr.order(),
            c.mode,
            c.trials,
            c.probe,
            c.centre,
            c.sample_box.0,
            c.sample_box.1,
            c.primes.0,
            c.primes.1,
            c.seed,
            c.certify
        )?;
        match &self.prediction {
            Some(p) => writeln!(
                f,
                "# prediction default={} class={} rank={}",
                p.default,
                p.class,
                p.rank.map_or("-".to_string(), |r| r.to_string())
            )?,
            None => writeln!(f, "# prediction none")?,
        }
        for t in &self.trials {
            match &t.outcome {
                Some(o) => {
                    let ranks: Vec<String> = o.ranks.iter().map(|(c, r)| format!("{c}:{r}")).collect();
                    let cert = o.certified.map_or("-".to_string(), |b| b.to_string());
                    writeln!(
                        f,
                        "trial={} status=ok attempts={} prime={} coeffs={} seed={} ranks={} rank={} certified={}",
                        t.index,
                        t.attempts,
                        o.prime,
                        join(&o.coeffs),
                        join(&o.seed),
                        ranks.join(";"),
                        o.rank,
                        cert
                    )?
                }
                None => writeln!(f, "trial={} status=aborted attempts={}", t.index, t.attempts)?,
            }
        }
        writeln!(f, "modal_rank={} agreement={}/{}", self.modal_rank, self.agreement, self.completed())
    }
}

/// Region for a window certificate of a sequence of order `n`. Diagonals
/// start `n` away from the main one; palindromic seeds use the mirror-free
/// region instead.
pub fn certificate_region(n: usize, mode: ProbeMode, (lo, hi): (i64, i64), palindromic: bool) -> HullRegion {
    if palindromic {
        HullRegion::palindromic(lo, hi, n, mode)
    } else {
        HullRegion { min_diagonal: n as i64, ..HullRegion::square(lo, hi, mode) }
    }
}

/// Prime drawn uniformly from `[lo, hi]` by the ChaCha8 stream of `seed`.
pub fn seeded_prime(seed: u64, lo: u64, hi: u64) -> Result<u64, ExperimentError> {
    Ok(random_prime(&mut ChaCha8Rng::seed_from_u64(seed), lo, hi)?)
}

fn sample(rng: &mut ChaCha8Rng, (lo, hi): (u64, u64), k: usize) -> Vec<u64> {
    (0..k).map(|_| rng.random_range(lo..=hi)).collect()
}

fn realise(cfg: &ExperimentConfig, field: PrimeField, coeffs: &[u64], seed: &[u64]) -> Option<Terms<Fp>> {
    let a = coeffs.iter().map(|&c| field.from_u64(c)).collect();
    let s = seed.iter().map(|&c| field.from_u64(c)).collect();
    let mut seq = gale_robinson(cfg.gr, a, s).ok()?;
    let (lo, hi) = cfg.window();
    seq.extend_checked(lo, hi).ok()?;
    Some(seq.terms())
}

fn run_trial(cfg: &ExperimentConfig, index: usize) -> Result<TrialRecord, ExperimentError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let n = cfg.gr.order();
    for attempt in 1..=MAX_RESAMPLES {
        let prime = random_prime(&mut rng, cfg.primes.0, cfg.primes.1)?;
        let field = PrimeField::new(prime)?;
        let coeffs = sample(&mut rng, cfg.sample_box, 3);
        let seed = sample(&mut rng, cfg.sample_box, n);
        let Some(terms) = realise(cfg, field, &coeffs, &seed) else {
            continue;
        };
        let m = ProductMatrix::new(&terms, &terms);
        let report = rank_probe(&m, cfg.mode, cfg.probe, cfg.centre)?;
        let certified = if cfg.certify {
            let (lo, hi) = cfg.window();
            let region = certificate_region(n, cfg.mode, (lo, hi), false);
            Some(hull_check_product(&m, cfg.mode, report.rank, region)?.certified())
        } else {
            None
        };
        let ranks = report.classes.iter().map(|c| (c.class.to_string(), c.rank)).collect();
        let outcome = TrialOutcome { prime, coeffs, seed, ranks, rank: report.rank, certified };
        return Ok(TrialRecord { index, attempts: attempt, outcome: Some(outcome) });
    }
    Ok(TrialRecord { index, attempts: MAX_RESAMPLES, outcome: None })
}

/// Trial `i` draws from the ChaCha8 stream `i` of the configured seed, so
/// reports do not depend on scheduling.
pub fn run_gr_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport, ExperimentError> {
    cfg.validate()?;
    let trials: Vec<TrialRecord> =
        (0..cfg.trials).into_par_iter().map(|i| run_trial(cfg, i)).collect::<Result<_, _>>()?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for o in trials.iter().filter_map(|t| t.outcome.as_ref()) {
        *counts.entry(o.rank).or_default() += 1;
    }
    let (modal_rank, agreement) = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(&r, &c)| (r, c))
        .ok_or(ExperimentError::AllAborted(cfg.trials))?;
    let prediction = predicted_rank(cfg.gr).ok();
    Ok(ExperimentReport { config: cfg.clone(), prediction, trials, modal_rank, agreement })
}

/// Rows `(s_{i+j} s_{i+n-j})_{j = 0..=n/2}` for every window inside `terms`.
pub fn window_rows<T: Field>(terms: &Terms<T>, n: usize) -> Vec<Vec<T>> {
    let n = n as i64;
    (terms.lo()..=terms.hi() - n)
        .map(|i| (0..=n / 2).map(|j| terms.get(i + j).unwrap().mul(terms.get(i + n - j).unwrap())).collect())
        .collect()
}

/// Kernel of the window system: coefficient tuples `(a_0, ..., a_{n/2})`
/// with `sum a_j s_{i+j} s_{i+n-j} = 0` on every window.
pub fn nonstrict_fit<T: Field>(terms: &Terms<T>, n: usize) -> Result<Vec<Vec<T>>, ExperimentError> {
    let needed = n + n / 2 + 2;
    if n < 2 || terms.len() < needed {
        return Err(ExperimentError::TooFewTerms { needed, found: terms.len() });
    }
    let zero = terms.vals[0].zero_like();
    Ok(nullspace_over_field(&window_rows(terms, n), n / 2 + 1, &zero))
}

/// The windows of `terms` on which `a` fails.
pub fn fit_failures<T: Field>(terms: &Terms<T>, n: usize, a: &[T]) -> Vec<i64> {
    window_rows(terms, n)
        .iter()
        .enumerate()
        .filter(|(_, row)| {
            let mut acc = a[0].zero_like();
            for (x, y) in row.iter().zip(a) {
                acc.add_assign(&x.mul(y));
            }
            !acc.is_zero()
        })
        .map(|(k, _)| terms.lo() + k as i64)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecimationRow {
    pub d: usize,
    /// `None` for the kernel shared by every residue.
    pub residue: Option<usize>,
    pub n: usize,
    pub dim: usize,
}

impl fmt::Display for DecimationRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.residue.map_or("*".to_string(), |r| r.to_string());
        write!(f, "d={} residue={} n={} dim={}", self.d, r, self.n, self.dim)
    }
}

/// Kernel dimensions of `nonstrict_fit` for each decimation factor,
/// residue and order; the shared row stacks every residue's windows.
pub fn decimation_scan<T: Field + Send + Sync>(
    seq: &Terms<T>,
    ds: impl IntoIterator<Item = usize>,
    ns: impl IntoIterator<Item = usize> + Clone,
) -> Result<Vec<DecimationRow>, ExperimentError> {
    let mut out = Vec::new();
    for d in ds {
        let parts = (0..d).map(|r| decimate(seq, d, r)).collect::<Result<Vec<_>, _>>()?;
        for n in ns.clone() {
            let mut stacked = Vec::new();
            for (r, part) in parts.iter().enumerate() {
                out.push(DecimationRow { d, residue: Some(r), n, dim: nonstrict_fit(part, n)?.len() });
                stacked.extend(window_rows(part, n));
            }
            let zero = seq.vals[0].zero_like();
            let dim = nullspace_over_field(&stacked, n / 2 + 1, &zero).len();
            out.push(DecimationRow { d, residue: None, n, dim });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::sequences::{unit_sequence, unit_sequence_fp};

    #[test]
    fn default_ranks_and_eta() {
        assert_eq!(default_rank(6).unwrap(), 4);
        assert_eq!(default_rank(7).unwrap(), 4);
        assert_eq!(default_rank(8).unwrap(), 8);
        assert_eq!(default_rank(12).unwrap(), 32);
        assert!(default_rank(3).is_err());
        assert_eq!(eta(5).unwrap(), rat_frac(3, 4));
        assert_eq!(eta(6).unwrap(), rat_frac(3, 4));
        assert_eq!(eta(7).unwrap(), rat_frac(1, 2));
        assert!(eta(4).is_err());
    }

    #[test]
    fn predictions() {
        let p = predicted_rank(GRType::new(1, 3, 4).unwrap()).unwrap();
        assert_eq!((p.class, p.rank), (RankClass::Default, Some(8)));
        let p = predicted_rank(GRType::new(1, 5, 10).unwrap()).unwrap();
        assert_eq!((p.class, p.rank), (RankClass::Exceptional { g: 5 }, Some(96)));
        let p = predicted_rank(GRType::new(5, 7, 10).unwrap()).unwrap();
        assert_eq!(p.class, RankClass::Exceptional { g: 5 });
        let p = predicted_rank(GRType::new(5, 10, 6).unwrap()).unwrap();
        assert_eq!(p.class, RankClass::Exceptional { g: 5 });
        let p = predicted_rank(GRType::new(6, 12, 13).unwrap()).unwrap();
        assert_eq!(p.class, RankClass::Exceptional { g: 6 });
        assert!(predicted_rank(GRType::new(2, 4, 6).unwrap()).is_err());
        assert!(predicted_rank(GRType::new(1, 1, 2).unwrap()).is_err());
    }

    #[test]
    fn config_validation() {
        let mut c = ExperimentConfig::new(GRType::new(1, 2, 3).unwrap()).unwrap();
        assert!(c.validate().is_ok());
        c.probe = 7;
        assert!(c.validate().is_err());
        c.probe = 40;
        c.primes = (24, 28);
        assert!(run_gr_experiment(&c).is_err());
    }

    #[test]
    fn somos_six_experiment_is_reproducible() {
        let mut c = ExperimentConfig::new(GRType::new(1, 2, 3).unwrap()).unwrap();
        c.trials = 3;
        let a = run_gr_experiment(&c).unwrap();
        assert_eq!(a.modal_rank, 4);
        assert!(a.matches_prediction());
        for t in &a.trials {
            let o = t.outcome.as_ref().unwrap();
            assert!((100_000..=1_000_000).contains(&o.prime));
            assert_eq!(o.certified, Some(true));
        }
        assert_eq!(a.to_string(), run_gr_experiment(&c).unwrap().to_string());
        c.seed += 1;
        assert_ne!(a.to_string(), run_gr_experiment(&c).unwrap().to_string());
    }

    #[test]
    fn fit_recovers_the_recurrence() {
        let mut s = unit_sequence(6).unwrap();
        s.extend_to(0, 30);
        let k = nonstrict_fit(&s.terms(), 6).unwrap();
        assert_eq!(k, vec![vec![rat(-1), rat(1), rat(1), rat(1)]]);
        assert!(nonstrict_fit(&s.terms(), 5).unwrap().is_empty());
        let short = Terms::new(0, vec![rat(1); 5]);
        assert!(nonstrict_fit(&short, 6).is_err());
    }

    #[test]
    fn fit_holds_out_of_sample() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut s = unit_sequence_fp(6, f).unwrap();
        s.extend_to(0, 120);
        let half = decimate(&s.terms(), 2, 0).unwrap();
        let train = Terms::new(half.base, half.vals[..20].to_vec());
        let basis = nonstrict_fit(&train, 8).unwrap();
        assert!(!basis.is_empty());
        for a in &basis {
            assert!(fit_failures(&half, 8, a).is_empty());
        }
    }

    #[test]
    fn decimated_somos_six() {
        let f = PrimeField::new(1_000_000_007).unwrap();
        let mut s = unit_sequence_fp(6, f).unwrap();
        s.extend_to(-60, 60);
        let rows = decimation_scan(&s.terms(), [1, 2], 6..=9).unwrap();
        let dim = |d, r, n| rows.iter().find(|x| x.d == d && x.residue == r && x.n == n).unwrap().dim;
        assert_eq!(dim(1, Some(0), 6), 1);
        assert_eq!(dim(2, Some(0), 7), 0);
        assert_eq!(dim(2, Some(1), 6), 0);
        for n in [8, 9] {
            assert!(dim(2, Some(0), n) > 0 && dim(2, Some(1), n) > 0);
            assert!(dim(2, None, n) > 0);
        }
    }
}
