//! Line-oriented Hamiltonian format.
//!
//! ```text
//! # hamiltonian n=4 d=2 k=3
//! 1.0  X@1 X@2 X@4
//! 0.5  Y@1 Y@4
//! ```
//!
//! Qudits are 1-based. Qubit factors are `X`, `Y`, `Z`; general factors are
//! written like the Pauli string names (`X^2Z`). Coefficients are printed
//! with the shortest representation that parses back to the same `f64`.

use super::{KLocalHamiltonian, Term};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

fn factor_name(d: u32, a: u32, b: u32) -> String {
    if d == 2 {
        return match (a, b) {
            (1, 0) => "X",
            (1, 1) => "Y",
            _ => "Z",
        }
        .into();
    }
    let part = |letter: char, e: u32| match e {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}^{e}"),
    };
    part('X', a) + &part('Z', b)
}

fn parse_factor(name: &str, d: u32) -> Option<(u32, u32)> {
    if d == 2 && name == "Y" {
        return Some((1, 1));
    }
    let mut a = 0;
    let mut b = 0;
    let mut rest = name;
    for (letter, slot) in [('X', &mut a), ('Z', &mut b)] {
        if let Some(r) = rest.strip_prefix(letter) {
            *slot = 1;
            rest = r;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                *slot = r[..end].parse().ok()?;
                rest = &r[end..];
            }
        }
    }
    (rest.is_empty() && (a, b) != (0, 0) && a < d && b < d).then_some((a, b))
}

fn header_field(header: &str, key: &str) -> Option<usize> {
    header
        .split_whitespace()
        .find_map(|w| w.strip_prefix(key)?.strip_prefix('=')?.parse().ok())
}

impl KLocalHamiltonian {
    pub fn render(&self) -> String {
        let mut out = format!("# hamiltonian n={} d={} k={}\n", self.n, self.d, self.k);
        for t in &self.terms {
            out += &format!("{:?} ", t.coeff);
            for i in t.string.support() {
                let f = t.string.factor(i);
                out += &format!(" {}@{}", factor_name(self.d, f.x_power(), f.z_power()), i + 1);
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate();
        let (n, d, k) = loop {
            let (no, line) = lines.next().ok_or(Error::Parse {
                line: 1,
                msg: "missing header".into(),
            })?;
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let header = line
                .strip_prefix('#')
                .map(str::trim)
                .and_then(|h| h.strip_prefix("hamiltonian"))
                .ok_or(Error::Parse {
                    line: no + 1,
                    msg: "expected '# hamiltonian n=.. d=..' header".into(),
                })?;
            let n = header_field(header, "n");
            let d = header_field(header, "d");
            match (n, d) {
                (Some(n), Some(d)) => break (n, d as u32, header_field(header, "k")),
                _ => {
                    return Err(Error::Parse {
                        line: no + 1,
                        msg: "header needs n and d".into(),
                    })
                }
            }
        };
        let mut terms = Vec::new();
        for (no, line) in lines {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: no + 1, msg };
            let mut words = line.split_whitespace();
            let coeff: f64 = words
                .next()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| bad("bad coefficient".into()))?;
            let mut xs = vec![0; n];
            let mut zs = vec![0; n];
            for w in words {
                let (name, q) = w.split_once('@').ok_or_else(|| bad(format!("bad factor {w:?}")))?;
                let q: usize = q.parse().map_err(|_| bad(format!("bad qudit in {w:?}")))?;
                let (a, b) = parse_factor(name, d).ok_or_else(|| bad(format!("bad factor {w:?}")))?;
                if q == 0 || q > n || xs[q - 1] != 0 || zs[q - 1] != 0 {
                    return Err(bad(format!("qudit {q} out of range or repeated")));
                }
                (xs[q - 1], zs[q - 1]) = (a, b);
            }
            let string = PauliString::from_exponents(d, xs, zs).map_err(|e| bad(e.to_string()))?;
            terms.push(Term { coeff, string });
        }
        match k {
            Some(k) => Self::new(n, d, k, terms),
            None => Self::from_terms(n, d, terms),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{paper_example_3local, random_dense_all_terms, random_k_local};

    #[test]
    fn round_trip_exact() {
        for h in [
            paper_example_3local(),
            random_dense_all_terms(4, 11).unwrap(),
            random_k_local(4, 3, 2, 9, 2).unwrap(),
            random_k_local(3, 5, 3, 9, 2).unwrap(),
        ] {
            assert_eq!(KLocalHamiltonian::parse(&h.render()).unwrap(), h);
        }
    }

    #[test]
    fn example_rendering() {
        let text = paper_example_3local().render();
        assert!(text.starts_with("# hamiltonian n=4 d=2 k=3\n"));
        assert!(text.contains("1.0  Y@1 Y@4\n"));
        assert!(text.contains("0.5  Z@1 Z@3 Z@4\n"));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = KLocalHamiltonian::parse("# hamiltonian n=2 d=2\n1 X@1\nfoo X@2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err:?}");
        assert!(KLocalHamiltonian::parse("1 X@1\n").is_err());
        assert!(KLocalHamiltonian::parse("# hamiltonian n=2 d=2\n1 X@3\n").is_err());
        assert!(KLocalHamiltonian::parse("# hamiltonian n=2 d=2\n1 W@1\n").is_err());
    }
}
