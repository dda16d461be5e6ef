use std::fmt::Write;

use serde_json::json;
use somos_core::arith::poly::fmt_mono;
use somos_core::arith::rational::rat;
use somos_core::arith::text::format_table;
use somos_core::arith::{Int, PrimeField, Ring};
use somos_core::certificates::{
    build_twin_polys, certificate_tables, low_order_identity, seed_degree, seed_monomial_count, verify_certificates_with,
    verify_ff_witness_with, witness_params, CertificateTable, IdentityCheck, TwinPolySet,
};
use somos_core::diamond::{hull_check_product, probe_window, rank_probe, ProbeMode, ProbeScalar, ProductMatrix};
use somos_core::error::{CertError, ExperimentError, IntegralityError, InvariantError, SeqError};
use somos_core::experiments::{
    certificate_region, decimation_scan, default_mode, run_gr_experiment, seeded_prime, ExperimentConfig,
    ExperimentReport,
};
use somos_core::integrality::{
    containment_check, centre, k_max, laurent_audit, lambda_set, uses_half, xi_coprimality_probe, Coprimality,
    IrreducibleSet,
};
use somos_core::invariants::{
    builtin_invariant, bundled_invariants, is_invariant, is_invariant_with, omega_box, upsilon_box_basis, CheckMode,
    Family, Verdict,
};
use somos_core::sequences::{
    dump_sequence, gale_robinson, master_gale_robinson, master_sequence, somos, DumpTerm, GRType, Layout, SeqView,
    Terms,
};

use crate::args::{
    CertifyArgs, DecimateArgs, Domain, ExperimentArgs, Format, GenArgs, InvariantArgs, LaurentArgs, Mode, RankArgs,
    Source, Values,
};
use crate::{Failure, Outcome};

fn usage(m: impl ToString) -> Failure {
    Failure::Usage(m.to_string())
}

fn seq_failure(e: SeqError) -> Failure {
    match e {
        SeqError::Division(b) => Failure::Falsified(format!("division failure at index {} ({:?})", b.index, b.reason)),
        e => usage(e),
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',').map(|t| t.trim().parse().map_err(|_| usage(format!("bad integer {t:?} in {s:?}")))).collect()
}

/// `lo..hi` (half open), `lo..=hi`, or a single index.
pub fn parse_range(s: &str) -> Result<(i64, i64), Failure> {
    let bad = || usage(format!("bad range {s:?}"));
    let num = |t: &str| t.trim().parse::<i64>().map_err(|_| bad());
    let (lo, hi) = if let Some((a, b)) = s.split_once("..=") {
        (num(a)?, num(b)?)
    } else if let Some((a, b)) = s.split_once("..") {
        (num(a)?, num(b)? - 1)
    } else {
        let v = num(s)?;
        (v, v)
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn parse_urange(s: &str) -> Result<(u64, u64), Failure> {
    let (lo, hi) = parse_range(s)?;
    if lo < 0 {
        return Err(usage(format!("range {s:?} must be nonnegative")));
    }
    Ok((lo as u64, hi as u64))
}

#[derive(Clone, Copy)]
enum Rec {
    Somos(usize),
    Gr(GRType),
}

impl Rec {
    fn order(self) -> usize {
        match self {
            Rec::Somos(n) => n,
            Rec::Gr(t) => t.order(),
        }
    }

    fn coefficient_count(self) -> usize {
        match self {
            Rec::Somos(n) => n / 2,
            Rec::Gr(_) => 3,
        }
    }

    fn layout(self) -> Layout {
        match self {
            Rec::Somos(n) => Layout::somos(n, false),
            Rec::Gr(t) => Layout::gale_robinson(t, false),
        }
    }

    fn family(self) -> Result<Family, Failure> {
        match self {
            Rec::Somos(n) => Family::somos(n).map_err(usage),
            Rec::Gr(t) => Ok(Family::GaleRobinson(t)),
        }
    }

    fn label(self) -> String {
        match self {
            Rec::Somos(n) => format!("somos-{n}"),
            Rec::Gr(t) => format!("gr{t}"),
        }
    }
}

fn parse_gr(s: &str) -> Result<GRType, Failure> {
    match parse_list(s)?.as_slice() {
        &[a, b, c] if a > 0 && b > 0 && c > 0 => GRType::new(a as usize, b as usize, c as usize).map_err(usage),
        _ => Err(usage(format!("type {s:?} needs three positive entries"))),
    }
}

fn rec_of(src: &Source) -> Result<Rec, Failure> {
    match (&src.order, &src.gr) {
        (Some(n), None) if *n >= 2 => Ok(Rec::Somos(*n)),
        (Some(n), None) => Err(usage(format!("order {n} is below 2"))),
        (None, Some(g)) => Ok(Rec::Gr(parse_gr(g)?)),
        _ => Err(usage("give --order or --gr")),
    }
}

/// Coefficients and seed as integers, after resolving the unit switches.
fn values_of(rec: Rec, v: &Values) -> Result<(Vec<i64>, Vec<i64>), Failure> {
    let coeffs = match (&v.coeffs, v.unit) {
        (Some(c), _) => parse_list(c)?,
        (None, true) => vec![1; rec.coefficient_count()],
        (None, false) => return Err(usage("give --coeffs or --unit")),
    };
    let seed = match (&v.seed, v.unit || v.unit_seed) {
        (Some(s), _) => parse_list(s)?,
        (None, true) => vec![1; rec.order()],
        (None, false) => return Err(usage("give --seed, --unit-seed or --unit")),
    };
    Ok((coeffs, seed))
}

fn build<T: Ring>(rec: Rec, coeffs: &[i64], seed: &[i64], conv: impl Fn(i64) -> T) -> Result<SeqView<T>, Failure> {
    let c = coeffs.iter().map(|&x| conv(x)).collect();
    let s = seed.iter().map(|&x| conv(x)).collect();
    match rec {
        Rec::Somos(n) if seed.len() != n => Err(usage(format!("order {n} needs {n} seed terms, got {}", seed.len()))),
        Rec::Somos(_) => somos(c, s).map_err(usage),
        Rec::Gr(t) => gale_robinson(t, c, s).map_err(usage),
    }
}

fn window<T: Ring>(seq: &mut SeqView<T>, lo: i64, hi: i64) -> Result<Terms<T>, Failure> {
    let n = seq.order() as i64;
    seq.extend_checked(lo.min(0), hi.max(n - 1)).map_err(seq_failure)?;
    let all = seq.terms();
    Ok(Terms::new(lo, (lo..=hi).map(|i| all.get(i).expect("realised").clone()).collect()))
}

fn emit<T: Ring + DumpTerm>(out: &mut String, rec: Rec, mut seq: SeqView<T>, lo: i64, hi: i64) -> Outcome {
    let terms = window(&mut seq, lo, hi)?;
    out.push_str(&dump_sequence(&terms, &rec.layout()));
    Ok(())
}

fn field(p: u64) -> Result<PrimeField, Failure> {
    PrimeField::new(p).map_err(usage)
}

pub fn gen(a: &GenArgs, out: &mut String) -> Outcome {
    let rec = rec_of(&a.source)?;
    let (lo, hi) = parse_range(&a.range)?;
    let domain = a.domain.unwrap_or(if a.p.is_some() { Domain::Fp } else { Domain::Rational });
    writeln!(out, "# gen source={} domain={} range={lo}..={hi}", rec.label(), format!("{domain:?}").to_lowercase()).unwrap();
    if domain == Domain::Laurent {
        let seq = match rec {
            Rec::Somos(n) => master_sequence(n),
            Rec::Gr(t) => master_gale_robinson(t),
        }
        .map_err(usage)?;
        return emit(out, rec, seq, lo, hi);
    }
    let (coeffs, seed) = values_of(rec, &a.values)?;
    match domain {
        Domain::Rational => emit(out, rec, build(rec, &coeffs, &seed, rat)?, lo, hi),
        Domain::Int => emit(out, rec, build(rec, &coeffs, &seed, Int::from)?, lo, hi),
        _ => {
            let f = field(a.p.ok_or_else(|| usage("--domain fp needs --p"))?)?;
            emit(out, rec, build(rec, &coeffs, &seed, |v| f.elem(v))?, lo, hi)
        }
    }
}

fn probe_mode(m: Option<Mode>, n: usize) -> ProbeMode {
    match m {
        Some(Mode::Diamond) => ProbeMode::Diamond,
        Some(Mode::Half) => ProbeMode::Half,
        None => default_mode(n),
    }
}

fn rank_on<T: ProbeScalar>(
    out: &mut String,
    a: &RankArgs,
    n: usize,
    mode: ProbeMode,
    palindromic: bool,
    mut seq: SeqView<T>,
) -> Outcome {
    let (lo, hi) = probe_window(mode, a.probe, a.centre);
    let terms = window(&mut seq, lo, hi)?;
    let m = ProductMatrix::new(&terms, &terms);
    let report = rank_probe(&m, mode, a.probe, a.centre).map_err(usage)?;
    for c in &report.classes {
        writeln!(out, "class {} rank={} spec={}", c.class, c.rank, c.spec).unwrap();
    }
    writeln!(out, "rank={}", report.rank).unwrap();
    let region = certificate_region(n, mode, (lo, hi), palindromic);
    let cert = hull_check_product(&m, mode, report.rank, region).map_err(usage)?;
    for (class, spec, v) in &cert.classes {
        writeln!(
            out,
            "certificate {class} spec={spec} vanishing={}/{} diagonal={}/{}",
            v.big_checked - v.big_nonzero.len(),
            v.big_checked,
            v.diag_checked - v.diag_zero.len(),
            v.diag_checked
        )
        .unwrap();
    }
    writeln!(out, "certified={} window={lo}..={hi}", cert.certified()).unwrap();
    if let Some(want) = a.expect {
        if report.rank != want || !cert.certified() {
            return Err(Failure::Falsified(format!("rank {} (certified {}), expected {want}", report.rank, cert.certified())));
        }
    }
    Ok(())
}

pub fn rank(a: &RankArgs, out: &mut String) -> Outcome {
    let rec = rec_of(&a.source)?;
    let n = rec.order();
    let mode = probe_mode(a.mode, n);
    let (coeffs, seed) = values_of(rec, &a.values)?;
    let palindromic = seed.iter().eq(seed.iter().rev());
    if a.probe > 2500 {
        eprintln!("warning: probe {} is long-running", a.probe);
    }
    let head = format!("# rank source={} mode={mode} probe={} centre={}", rec.label(), a.probe, a.centre);
    if a.rational {
        writeln!(out, "{head} domain=rational").unwrap();
        return rank_on(out, a, n, mode, palindromic, build(rec, &coeffs, &seed, rat)?);
    }
    let p = match a.p {
        Some(p) => p,
        None => seeded_prime(a.rng_seed, 1 << 59, 1 << 60).map_err(usage)?,
    };
    writeln!(out, "{head} domain=fp p={p} rng_seed={}", a.rng_seed).unwrap();
    let f = field(p)?;
    rank_on(out, a, n, mode, palindromic, build(rec, &coeffs, &seed, |v| f.elem(v))?)
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::SymbolicPass => "symbolic-pass".into(),
        Verdict::SampledPass { trials, resampled } => format!("sampled-pass trials={trials} resampled={resampled}"),
        Verdict::Fail(w) => format!("fail modulus={} alpha={:?} x={:?}", w.modulus, w.alpha, w.x),
    }
}

fn inv_failure(e: InvariantError) -> Failure {
    usage(e)
}

pub fn invariants(a: &InvariantArgs, out: &mut String) -> Outcome {
    if let Some(name) = &a.show {
        let f = builtin_invariant(name).map_err(inv_failure)?;
        writeln!(out, "# invariant name={name} family={}", f.family).unwrap();
        out.push_str(&format_table(&f.phi, &f.family.layout().table_layout()));
        return Ok(());
    }
    let rec = rec_of(&a.source)?;
    let family = rec.family()?;
    let omega = omega_box(family);
    if a.dims {
        writeln!(out, "{} / {}", upsilon_box_basis(family).len(), omega.dim()).unwrap();
        if !a.check {
            return Ok(());
        }
    }
    if !a.check {
        writeln!(out, "# invariants family={family} basis={} kernel={}", omega.matrix.basis.len(), omega.dim()).unwrap();
        for (k, f) in omega.invariants().iter().enumerate() {
            writeln!(out, "# omega_{k}").unwrap();
            out.push_str(&format_table(&f.phi, &family.layout().table_layout()));
        }
        return Ok(());
    }
    let Rec::Somos(n) = rec else {
        return Err(usage("bundled invariants exist for Somos orders 4 to 7"));
    };
    let bundled = bundled_invariants(n).map_err(inv_failure)?;
    if bundled.is_empty() {
        return Err(usage(format!("no bundled invariants of order {n}")));
    }
    let mode = if a.symbolic { "symbolic".to_string() } else { format!("trials={}", a.trials) };
    writeln!(out, "# check order={n} shift={mode}").unwrap();
    let mut bad = Vec::new();
    for f in &bundled {
        let name = f.name.clone().unwrap_or_default();
        let in_span = omega.contains(f, 1);
        let v = if a.symbolic { is_invariant_with(f, CheckMode::Symbolic) } else { is_invariant(f, a.trials) };
        writeln!(out, "name={name} rows={} in_span={in_span} shift={}", f.row_count(), verdict_text(&v)).unwrap();
        if !in_span || !v.passed() {
            bad.push(name);
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Falsified(format!("failing invariants: {}", bad.join(","))))
    }
}

fn cert_failure(e: CertError) -> Failure {
    match e {
        CertError::UnsupportedOrder(_) | CertError::Invariant(_) => usage(e),
        e => Failure::Falsified(e.to_string()),
    }
}

fn identity_line(out: &mut String, c: &IdentityCheck, set: &TwinPolySet) {
    if c.holds() {
        writeln!(out, "identity \"{}\" residual=0", c.label).unwrap();
    } else {
        let lead = c.witness().map(|(m, k)| format!("{k}*{}", fmt_mono(&m, set.layout.nvars(), &set.layout.names())));
        writeln!(out, "identity \"{}\" residual_terms={} leading={}", c.label, c.residual.len(), lead.unwrap_or_default())
            .unwrap();
    }
}

pub fn certify(a: &CertifyArgs, out: &mut String) -> Outcome {
    let n = a.order;
    let set = build_twin_polys(n).map_err(cert_failure)?;
    let l = &set.layout;
    let names = l.names();
    writeln!(out, "# certify order={n} witness={}", a.witness).unwrap();
    writeln!(
        out,
        "d summands={} degree={} denominator={} spec={}",
        seed_monomial_count(l, &set.d),
        seed_degree(l, &set.d).map_or("-".into(), |d| d.to_string()),
        fmt_mono(&set.denominator, l.nvars(), &names),
        set.spec
    )
    .unwrap();
    let mut ok = true;
    if n >= 6 {
        let (ta, tb, _) = certificate_tables(n).map_err(cert_failure)?;
        let a_tab = CertificateTable::load(ta, l).map_err(cert_failure)?;
        let b_tab = CertificateTable::load(tb, l).map_err(cert_failure)?;
        let rep = verify_certificates_with(&set, &a_tab, &b_tab).map_err(cert_failure)?;
        identity_line(out, &rep.primary, &set);
        identity_line(out, &rep.derived, &set);
        ok &= rep.holds();
    } else {
        let c = low_order_identity(&set).map_err(cert_failure)?;
        identity_line(out, &c, &set);
        ok &= c.holds();
    }
    if a.witness {
        let params = witness_params(n).map_err(cert_failure)?;
        let rep = verify_ff_witness_with(&set, &params).map_err(cert_failure)?;
        let roots: Vec<String> = rep.roots.iter().map(|(r, m)| format!("{r}^{m}")).collect();
        writeln!(
            out,
            "witness p={} polynomial={} roots={}",
            params.p,
            rep.factored().unwrap_or_else(|| rep.polynomial.to_string()),
            roots.join(",")
        )
        .unwrap();
        for o in &rep.options {
            let seed: Vec<String> = o.s_seed.iter().map(|v| v.to_string()).collect();
            writeln!(
                out,
                "option seed={} period_s={} period_t={} terms_nonzero={} minors={}x{} nonzero={}/{}",
                seed.join(","),
                o.period_s,
                o.period_t,
                o.terms_nonzero,
                rep.minor_size,
                rep.minor_size,
                o.minors_nonzero,
                o.minors_checked
            )
            .unwrap();
            if let (Some(c), Some(z)) = (o.diagonal_checked, o.diagonal_nonzero) {
                writeln!(out, "option_diagonal nonzero={z}/{c}").unwrap();
            }
        }
        writeln!(out, "witness_minors={}", rep.minors_checked()).unwrap();
        ok &= rep.passed();
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Falsified(format!("order {n} certificate check failed")))
    }
}

fn int_failure(e: IntegralityError) -> Failure {
    match e {
        IntegralityError::LaurentFailure { .. } => Failure::Falsified(e.to_string()),
        e => usage(e),
    }
}

fn set_text(s: &IrreducibleSet, l: &Layout) -> String {
    format!("{{{}}}", s.names(l).join(","))
}

pub fn laurent(a: &LaurentArgs, out: &mut String) -> Outcome {
    let n = a.order;
    if !(2..=10).contains(&n) {
        return Err(usage(format!("order {n} is outside 2..=10")));
    }
    let l = Layout::somos(n, false);
    writeln!(out, "# laurent order={n} k_max={} centre={}", k_max(n), centre(n)).unwrap();
    if a.range.is_some() || !(a.sets || a.xi) {
        let (lo, hi) = match &a.range {
            Some(r) => parse_range(r)?,
            None => (n as i64, k_max(n)),
        };
        out.push_str(&laurent_audit(n, lo, hi).map_err(int_failure)?.to_string());
    }
    if a.sets {
        let half = uses_half(n);
        let k_hi = a.k_max.unwrap_or(k_max(n) - centre(n));
        let c = containment_check(n, k_hi).map_err(int_failure)?;
        let lambda = lambda_set(n, half).map_err(int_failure)?;
        writeln!(out, "lambda mode={} set={}", if half { "half" } else { "diamond" }, set_text(&lambda, &l)).unwrap();
        for (k, t) in &c.thetas {
            writeln!(out, "theta k={k} set={}", set_text(t, &l)).unwrap();
        }
        writeln!(out, "containment base={} holds={}", set_text(&c.base, &l), c.holds()).unwrap();
        if !c.holds() {
            return Err(Failure::Falsified("theta escapes lambda and the base set".into()));
        }
    }
    if a.xi {
        let p = xi_coprimality_probe(n, a.trials, a.rng_seed).map_err(int_failure)?;
        let deg = |d: Option<i32>| d.map_or("-".into(), |d| d.to_string());
        let verdict = match &p.verdict {
            Coprimality::Coprime { probes } => format!("coprime probes={probes}"),
            Coprimality::Inconclusive { var, trial, gcd_degree } => {
                format!("inconclusive var={var} trial={trial} gcd_degree={gcd_degree}")
            }
        };
        writeln!(
            out,
            "xi k={} degrees={},{} summands={},{} verdict={verdict} rng_seed={}",
            p.k,
            deg(p.degrees[0]),
            deg(p.degrees[1]),
            p.summands[0],
            p.summands[1],
            a.rng_seed
        )
        .unwrap();
        if !p.passed() {
            return Err(Failure::Falsified("coprimality probe inconclusive".into()));
        }
    }
    Ok(())
}

fn exp_failure(e: ExperimentError) -> Failure {
    usage(e)
}

fn report_json(r: &ExperimentReport) -> serde_json::Value {
    let c = &r.config;
    let trials: Vec<_> = r
        .trials
        .iter()
        .map(|t| match &t.outcome {
            Some(o) => json!({
                "trial": t.index,
                "status": "ok",
                "attempts": t.attempts,
                "prime": o.prime,
                "coeffs": o.coeffs,
                "seed": o.seed,
                "ranks": o.ranks.iter().map(|(k, v)| json!({"class": k, "rank": v})).collect::<Vec<_>>(),
                "rank": o.rank,
                "certified": o.certified,
            }),
            None => json!({"trial": t.index, "status": "aborted", "attempts": t.attempts}),
        })
        .collect();
    json!({
        "type": c.gr.entries(),
        "n": c.gr.order(),
        "mode": c.mode.to_string(),
        "trials": c.trials,
        "probe": c.probe,
        "centre": c.centre,
        "sample_box": [c.sample_box.0, c.sample_box.1],
        "primes": [c.primes.0, c.primes.1],
        "seed": c.seed,
        "certify": c.certify,
        "prediction": r.prediction.as_ref().map(|p| json!({
            "default": p.default,
            "class": p.class.to_string(),
            "rank": p.rank,
        })),
        "records": trials,
        "modal_rank": r.modal_rank,
        "agreement": r.agreement,
        "completed": r.completed(),
    })
}

pub fn experiment(a: &ExperimentArgs, out: &mut String) -> Outcome {
    let t = parse_gr(&a.gr)?;
    let mut cfg = ExperimentConfig::new(t).map_err(exp_failure)?;
    if let Some(v) = a.trials {
        cfg.trials = v;
    }
    if let Some(v) = a.probe {
        cfg.probe = v;
    }
    if let Some(v) = &a.sample_box {
        cfg.sample_box = parse_urange(v)?;
    }
    if let Some(v) = &a.primes {
        cfg.primes = parse_urange(v)?;
    }
    if let Some(v) = a.rng_seed {
        cfg.seed = v;
    }
    if let Some(v) = a.centre {
        cfg.centre = v;
    }
    cfg.mode = probe_mode(a.mode, t.order());
    cfg.certify = !a.no_certify;
    if cfg.probe > 2500 {
        eprintln!("warning: probe {} is long-running", cfg.probe);
    }
    let r = run_gr_experiment(&cfg).map_err(exp_failure)?;
    match a.format {
        Format::Text => out.push_str(&r.to_string()),
        Format::Json => {
            out.push_str(&serde_json::to_string_pretty(&report_json(&r)).expect("serialisable"));
            out.push('\n');
        }
    }
    match &r.prediction {
        Some(p) if p.rank.is_some() && !r.matches_prediction() => Err(Failure::Falsified(format!(
            "modal rank {} on {}/{} trials, predicted {}",
            r.modal_rank,
            r.agreement,
            r.completed(),
            p.rank.map_or("-".into(), |x| x.to_string())
        ))),
        _ => Ok(()),
    }
}

pub fn decimate(a: &DecimateArgs, out: &mut String) -> Outcome {
    let rec = rec_of(&a.source)?;
    let (coeffs, seed) = values_of(rec, &a.values)?;
    let (d_lo, d_hi) = parse_urange(&a.d)?;
    let (n_lo, n_hi) = parse_urange(&a.n)?;
    if d_lo == 0 || n_lo < 2 {
        return Err(usage("factors start at 1 and orders at 2"));
    }
    let (d_hi, n_hi) = (d_hi as i64, n_hi as i64);
    let len = d_hi * (n_hi + n_hi / 2 + 8);
    let (lo, hi) = (-(len / 2), len - len / 2);
    let ds = d_lo as usize..=d_hi as usize;
    let ns = n_lo as usize..=n_hi as usize;
    let domain = a.p.map_or("rational".to_string(), |p| format!("fp p={p}"));
    writeln!(out, "# decimate source={} domain={domain} window={lo}..={hi}", rec.label()).unwrap();
    let rows = match a.p {
        None => {
            let terms = window(&mut build(rec, &coeffs, &seed, rat)?, lo, hi)?;
            decimation_scan(&terms, ds, ns)
        }
        Some(p) => {
            let f = field(p)?;
            let terms = window(&mut build(rec, &coeffs, &seed, |v| f.elem(v))?, lo, hi)?;
            decimation_scan(&terms, ds, ns)
        }
    }
    .map_err(exp_failure)?;
    for r in rows {
        writeln!(out, "{r}").unwrap();
    }
    Ok(())
}
