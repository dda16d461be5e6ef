//! Line-oriented polynomial table format.
//!
//! Each line reads `<coeff-expr> : <exponents>`. The coefficient is a sum of
//! products of integers and powers `a<i>^<e>`; the exponents are one decimal
//! digit per indeterminate, or `[e0,e1,...]` for values outside `0..=9`.
//! Blank lines and text after `#` are ignored.

use std::collections::BTreeMap;

use super::int::Int;
use super::mono::Mono;
use super::poly::MultiPoly;
use super::ring::Ring;
use crate::error::ArithError;

/// How table symbols map onto the indeterminates of a polynomial ring.
#[derive(Clone, Debug)]
pub struct TableLayout {
    pub nvars: usize,
    /// `alpha[j]` is the variable index of `a<j+1>`.
    pub alpha: Vec<usize>,
    /// `slots[k]` is the variable index of exponent position `k`.
    pub slots: Vec<usize>,
}

fn perr(line: usize, msg: impl Into<String>) -> ArithError {
    ArithError::Parse { line, msg: msg.into() }
}

pub fn parse_coeff_expr(s: &str, layout: &TableLayout, line: usize) -> Result<MultiPoly<Int>, ArithError> {
    let z = Int::ZERO;
    let mut acc = MultiPoly::zero(layout.nvars, &z);
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(perr(line, "empty coefficient"));
    }
    // Split into signed summands.
    let mut summands: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in compact.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('^') {
            summands.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(perr(line, "dangling sign"));
    }
    summands.push((neg, cur));
    for (neg, prod) in summands {
        let mut coef = Int::ONE;
        let mut mono = Mono::ONE;
        for factor in prod.split('*') {
            if factor.is_empty() {
                return Err(perr(line, "empty factor"));
            }
            if let Some(rest) = factor.strip_prefix('a') {
                let (idx, exp) = match rest.split_once('^') {
                    Some((i, e)) => (i, e.parse::<i32>().map_err(|_| perr(line, format!("bad exponent in {factor}")))?),
                    None => (rest, 1),
                };
                let j: usize = idx.parse().map_err(|_| perr(line, format!("bad symbol {factor}")))?;
                if j == 0 || j > layout.alpha.len() {
                    return Err(perr(line, format!("unknown coefficient symbol {factor}")));
                }
                mono = mono.mul(&Mono::var(layout.alpha[j - 1], exp));
            } else {
                let v: Int = factor.parse().map_err(|_| perr(line, format!("bad integer {factor}")))?;
                coef = coef.mul(&v);
            }
        }
        if neg {
            coef = coef.neg();
        }
        acc = acc.add_poly(&MultiPoly::monomial(layout.nvars, mono, coef));
    }
    Ok(acc)
}

pub fn parse_exponents(s: &str, len: usize, line: usize) -> Result<Vec<i32>, ArithError> {
    let s = s.trim();
    let exps: Vec<i32> = if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        inner
            .split(',')
            .map(|t| t.trim().parse::<i32>().map_err(|_| perr(line, format!("bad exponent {t}"))))
            .collect::<Result<_, _>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as i32).ok_or_else(|| perr(line, format!("bad exponent digit {c}"))))
            .collect::<Result<_, _>>()?
    };
    if exps.len() != len {
        return Err(perr(line, format!("expected {len} exponents, found {}", exps.len())));
    }
    Ok(exps)
}

pub fn parse_table(text: &str, layout: &TableLayout) -> Result<MultiPoly<Int>, ArithError> {
    let z = Int::ZERO;
    let mut acc = MultiPoly::zero(layout.nvars, &z);
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (coef, exps) = body.split_once(':').ok_or_else(|| perr(line, "missing ':'"))?;
        let c = parse_coeff_expr(coef, layout, line)?;
        let e = parse_exponents(exps, layout.slots.len(), line)?;
        let mut m = Mono::ONE;
        for (slot, &x) in layout.slots.iter().zip(&e) {
            m = m.mul(&Mono::var(*slot, x));
        }
        acc = acc.add_poly(&c.mul_mono(&m));
    }
    Ok(acc)
}

fn format_exponents(e: &[i32]) -> String {
    if e.iter().all(|&x| (0..=9).contains(&x)) {
        e.iter().map(|x| x.to_string()).collect()
    } else {
        format!("[{}]", e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// Inverse of `parse_table`: one row per distinct exponent part, rows in
/// decreasing graded-lex order of that part.
pub fn format_table(p: &MultiPoly<Int>, layout: &TableLayout) -> String {
    let names: Vec<String> = (0..layout.nvars)
        .map(|v| match layout.alpha.iter().position(|&a| a == v) {
            Some(j) => format!("a{}", j + 1),
            None => format!("v{v}"),
        })
        .collect();
    let mut groups: BTreeMap<std::cmp::Reverse<Mono>, Vec<(Mono, Int)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let mut key = Mono::ONE;
        let mut rest = *m;
        for (k, &slot) in layout.slots.iter().enumerate() {
            key.set_exp(k, m.exp(slot));
            rest.set_exp(slot, 0);
        }
        groups.entry(std::cmp::Reverse(key)).or_default().push((rest, c.clone()));
    }
    let mut out = String::new();
    for (std::cmp::Reverse(key), terms) in groups {
        let coef = MultiPoly::from_terms(layout.nvars, terms, &Int::ZERO);
        let exps: Vec<i32> = (0..layout.slots.len()).map(|k| key.exp(k)).collect();
        out.push_str(&format!("{} : {}\n", coef.fmt_with(&names), format_exponents(&exps)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn layout() -> TableLayout {
        TableLayout { nvars: 7, alpha: vec![0, 1, 2], slots: vec![3, 4, 5, 6] }
    }

    #[test]
    fn round_trip() {
        let text = "1 : 2002\na1 : 1030\na1^2*a3 + a3^2 : 0121\n-2*a1*a2*a3 : [0,1,2,10]\n";
        let p = parse_table(text, &layout()).unwrap();
        assert_eq!(p.len(), 5);
        let back = parse_table(&format_table(&p, &layout()), &layout()).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_table("1 : 2002\na7 : 1111\n", &layout()).unwrap_err();
        assert!(matches!(e, ArithError::Parse { line: 2, .. }));
        assert!(parse_table("1 : 200\n", &layout()).is_err());
    }
}
