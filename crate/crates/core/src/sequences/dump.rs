use super::{master::Layout, DomainTag, Terms};
use crate::arith::text::format_table;
use crate::arith::{Fp, Int, Rational, ZPoly};

/// Text rendering of a single sequence term.
pub trait DumpTerm: DomainTag {
    /// Lines for one term. Field-like values take one line; Laurent terms
    /// use the polynomial table format, one line per exponent string.
    fn dump_lines(&self, layout: &Layout) -> Vec<String>;
}

impl DumpTerm for Rational {
    fn dump_lines(&self, _: &Layout) -> Vec<String> {
        vec![format!("{}/{}", self.numer(), self.denom())]
    }
}

impl DumpTerm for Fp {
    fn dump_lines(&self, _: &Layout) -> Vec<String> {
        vec![self.value().to_string()]
    }
}

impl DumpTerm for Int {
    fn dump_lines(&self, _: &Layout) -> Vec<String> {
        vec![self.to_string()]
    }
}

impl DumpTerm for ZPoly {
    fn dump_lines(&self, layout: &Layout) -> Vec<String> {
        if self.is_empty() {
            return vec!["0 : ".to_string() + &"0".repeat(layout.table_layout().slots.len())];
        }
        format_table(self, &layout.table_layout()).lines().map(str::to_string).collect()
    }
}

/// Header `order=<n> domain=<tag> base=<i0>` and then the terms. Laurent
/// terms are multi-line, so each is introduced by a `# s_<i>` comment line.
pub fn dump_sequence<T: DumpTerm>(terms: &Terms<T>, layout: &Layout) -> String {
    let mut out = format!("order={} domain={} base={}\n", layout.n, T::domain_tag(), terms.base);
    let multi = T::domain_tag() == "laurent";
    for (k, v) in terms.vals.iter().enumerate() {
        if multi {
            out.push_str(&format!("# s_{}\n", terms.base + k as i64));
        }
        for l in v.dump_lines(layout) {
            out.push_str(&l);
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{master_sequence, unit_sequence};
    use super::*;
    use crate::arith::text::parse_table;

    #[test]
    fn rational_dump() {
        let mut s = unit_sequence(4).unwrap();
        s.extend_to(0, 5);
        let d = dump_sequence(&s.terms(), &Layout::somos(4, false));
        assert_eq!(d, "order=4 domain=rational base=0\n1/1\n1/1\n1/1\n1/1\n2/1\n3/1\n");
    }

    #[test]
    fn laurent_dump_parses_back() {
        let mut s = master_sequence(6).unwrap();
        s.extend_to(-1, 7);
        let l = Layout::somos(6, false);
        let d = dump_sequence(&s.terms(), &l);
        let blocks: Vec<&str> = d.split("# s_").skip(1).collect();
        assert_eq!(blocks.len(), 9);
        for (k, b) in blocks.iter().enumerate() {
            let body = b.split_once('\n').unwrap().1;
            assert_eq!(&parse_table(body, &l.table_layout()).unwrap(), s.get(k as i64 - 1).unwrap());
        }
    }
}
