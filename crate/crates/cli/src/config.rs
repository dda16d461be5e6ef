//! `--config FILE` support. The file holds `key = value` lines; each becomes
//! `--key value` placed before the explicit flags, so flags given on the
//! command line win. `true` turns a switch on, `false` leaves it off.

use std::fs;

fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", k + 1))?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() {
            return Err(format!("config line {}: empty key", k + 1));
        }
        match value {
            "true" => out.push(format!("--{key}")),
            "false" => {}
            v => {
                out.push(format!("--{key}"));
                out.push(v.to_string());
            }
        }
    }
    Ok(out)
}

/// Strip `--config` from `argv` and splice the file's flags in after the
/// subcommand name.
pub fn expand_args(argv: Vec<String>) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut path = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&path).map_err(|e| format!("cannot read {path}: {e}"))?;
    let extra = parse(&text)?;
    let at = rest.iter().skip(1).position(|a| !a.starts_with('-')).map_or(rest.len(), |k| k + 2);
    rest.splice(at..at, extra);
    Ok(rest)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_switches() {
        let got = parse("# comment\nprobe = 60\nunit = true\nno_certify = false\n\n").unwrap();
        assert_eq!(got, ["--probe", "60", "--unit"]);
        assert!(parse("probe 60").is_err());
    }
}
