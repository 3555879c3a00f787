//! Scheme export format.
//!
//! ```text
//! # scheme kind=decoupling N=16 n=5 d=2
//! 0.0625  I
//! 0.0625  Z2 Z3 Z4 Z5
//! ```
//!
//! Each step line is the duration, the rendered Pauli string, and a trailing
//! `ctrl` for controlized steps.

use super::{Scheme, SchemeKind, Step};
use crate::error::{Error, Result};
use crate::pauli::PauliString;

impl Scheme {
    pub fn render(&self) -> String {
        let mut out = format!(
            "# scheme kind={} N={} n={} d={}\n",
            self.kind,
            self.steps.len(),
            self.n,
            self.d
        );
        for s in &self.steps {
            out += &format!("{:?}  {}", s.tau, s.u);
            if s.controlled {
                out += "  ctrl";
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty scheme file".into(),
        })?;
        let fields = header
            .trim()
            .strip_prefix('#')
            .map(str::trim)
            .and_then(|h| h.strip_prefix("scheme"))
            .ok_or(Error::Parse {
                line: 1,
                msg: "expected '# scheme kind=.. N=.. n=.. d=..' header".into(),
            })?;
        let field = |key: &str| {
            fields
                .split_whitespace()
                .find_map(|w| w.strip_prefix(key)?.strip_prefix('='))
                .ok_or(Error::Parse {
                    line: 1,
                    msg: format!("header lacks {key}"),
                })
        };
        let num = |key: &str| -> Result<usize> {
            field(key)?.parse().map_err(|_| Error::Parse {
                line: 1,
                msg: format!("bad {key}"),
            })
        };
        let kind: SchemeKind = field("kind")?.parse()?;
        let (count, n, d) = (num("N")?, num("n")?, num("d")? as u32);
        let mut steps = Vec::with_capacity(count);
        for (no, line) in lines {
            if line.trim_start().starts_with('#') {
                continue;
            }
            let bad = |msg: String| Error::Parse { line: no + 1, msg };
            let mut words: Vec<&str> = line.split_whitespace().collect();
            let controlled = words.last() == Some(&"ctrl");
            if controlled {
                words.pop();
            }
            let tau: f64 = words
                .first()
                .and_then(|w| w.parse().ok())
                .ok_or_else(|| bad("bad duration".into()))?;
            let u = PauliString::parse(&words[1..].join(" "), n, d).map_err(|e| bad(e.to_string()))?;
            steps.push(Step { tau, u, controlled });
        }
        if steps.len() != count {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says N={count} but found {} steps", steps.len()),
            });
        }
        Scheme::new(kind, n, d, steps)
    }
}
