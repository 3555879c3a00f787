//! Human-readable rendering and parsing of Pauli strings.
//!
//! Factors are written `<name><qudit>` with 1-based qudits, for example
//! `X1 Z3 (XZ)4`. Names longer than one character are parenthesized. Powers
//! above one are written `X^2`. A nonzero phase is a prefix separated by
//! ` * `: for qubits one of `i`, `-1`, `-i`; otherwise `w^k` meaning
//! `exp(i pi k / d)`.

use super::PauliString;
use crate::error::{Error, Result};

fn power_name(letter: char, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => letter.to_string(),
        _ => format!("{letter}^{e}"),
    }
}

fn factor_name(a: u32, b: u32) -> String {
    let name = power_name('X', a) + &power_name('Z', b);
    if name.len() > 1 {
        format!("({name})")
    } else {
        name
    }
}

fn phase_prefix(d: u32, k: u32) -> Option<String> {
    match (d, k) {
        (_, 0) => None,
        (2, 1) => Some("i".into()),
        (2, 2) => Some("-1".into()),
        (2, 3) => Some("-i".into()),
        _ => Some(format!("w^{k}")),
    }
}

impl PauliString {
    pub fn render(&self) -> String {
        let body: Vec<String> = (0..self.num_qudits())
            .filter(|&i| self.xs[i] != 0 || self.zs[i] != 0)
            .map(|i| format!("{}{}", factor_name(self.xs[i], self.zs[i]), i + 1))
            .collect();
        let body = if body.is_empty() {
            "I".to_string()
        } else {
            body.join(" ")
        };
        match phase_prefix(self.d, self.phase) {
            Some(p) => format!("{p} * {body}"),
            None => body,
        }
    }

    /// Parses the output of [`PauliString::render`] for `n` qudits of
    /// dimension `d`.
    pub fn parse(text: &str, n: usize, d: u32) -> Result<Self> {
        let bad = |msg: String| Error::Parse { line: 1, msg };
        let (phase, body) = match text.split_once(" * ") {
            Some((p, b)) => (parse_phase(p.trim(), d).ok_or_else(|| bad(format!("bad phase {p:?}")))?, b),
            None => (0, text),
        };
        let mut s = PauliString::identity(n, d);
        let body = body.trim();
        if body != "I" {
            for token in body.split_whitespace() {
                let (a, b, q) = parse_factor(token, d).ok_or_else(|| bad(format!("bad factor {token:?}")))?;
                if q == 0 || q > n {
                    return Err(bad(format!("qudit {q} outside 1..={n}")));
                }
                if s.xs[q - 1] != 0 || s.zs[q - 1] != 0 {
                    return Err(bad(format!("qudit {q} repeated")));
                }
                s.xs[q - 1] = a;
                s.zs[q - 1] = b;
            }
        }
        Ok(s.with_phase_exp(phase))
    }
}

impl std::fmt::Display for PauliString {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

fn parse_phase(p: &str, d: u32) -> Option<u32> {
    if d == 2 {
        match p {
            "i" => return Some(1),
            "-1" => return Some(2),
            "-i" => return Some(3),
            _ => {}
        }
    }
    let k: u32 = p.strip_prefix("w^")?.parse().ok()?;
    (k < 2 * d).then_some(k)
}

fn parse_power(s: &str, letter: char, d: u32) -> Option<(u32, &str)> {
    let Some(rest) = s.strip_prefix(letter) else {
        return Some((0, s));
    };
    if let Some(rest) = rest.strip_prefix('^') {
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let e: u32 = rest[..end].parse().ok()?;
        return (e > 0 && e < d).then_some((e, &rest[end..]));
    }
    Some((1, rest))
}

fn parse_name(name: &str, d: u32) -> Option<(u32, u32)> {
    let (a, rest) = parse_power(name, 'X', d)?;
    let (b, rest) = parse_power(rest, 'Z', d)?;
    (rest.is_empty() && (a, b) != (0, 0)).then_some((a, b))
}

fn parse_factor(token: &str, d: u32) -> Option<(u32, u32, usize)> {
    let (name, qudit) = if let Some(rest) = token.strip_prefix('(') {
        let (name, q) = rest.split_once(')')?;
        (name, q)
    } else {
        let split = token.find(|c: char| c.is_ascii_digit())?;
        let (name, q) = token.split_at(split);
        if name.len() != 1 {
            return None;
        }
        (name, q)
    };
    let (a, b) = parse_name(name, d)?;
    Some((a, b, qudit.parse().ok()?))
}
