use super::Graph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses the canonical edge-list format: a header `n m`, then `m` lines
/// `u v` with 0-based labels. Blank lines and `#` comments are ignored.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let (n, m) = parse_pair(hline, header)?;

    let mut g = Graph::empty(n);
    let mut seen = 0;
    for (ln, line) in lines {
        let (u, v) = parse_pair(ln, line)?;
        if u >= n || v >= n {
            return Err(parse_err(ln, format!("vertex out of range 0..{n}")));
        }
        if u == v {
            return Err(parse_err(ln, format!("loop at vertex {u}")));
        }
        if g.has_edge(u, v) {
            return Err(parse_err(ln, format!("duplicate edge {u} {v}")));
        }
        g.set(u, v);
        seen += 1;
    }
    if seen != m {
        return Err(parse_err(hline, format!("header announces {m} edges, found {seen}")));
    }
    Ok(g)
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| parse_err(line, "expected two integers"))?;
        tok.parse()
            .map_err(|_| parse_err(line, format!("not a non-negative integer: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(parse_err(line, "trailing tokens"));
    }
    Ok((a, b))
}

/// Decodes one graph6 string (an optional `>>graph6<<` header is accepted).
///
/// Layout: `N(n)` followed by the upper triangle of the adjacency matrix in
/// column order (`(0,1), (0,2), (1,2), (0,3), ...`), packed six bits per byte,
/// most significant bit first, each byte offset by 63.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes = s.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(1, "empty graph6 string"));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("invalid graph6 byte {b:#04x}")));
    }
    let six: Vec<u64> = bytes.iter().map(|&b| (b - 63) as u64).collect();

    let (n, body) = if six[0] != 63 {
        (six[0] as usize, &six[1..])
    } else if six.len() >= 2 && six[1] != 63 {
        if six.len() < 4 {
            return Err(parse_err(1, "truncated graph6 size field"));
        }
        ((six[1] << 12 | six[2] << 6 | six[3]) as usize, &six[4..])
    } else {
        if six.len() < 8 {
            return Err(parse_err(1, "truncated graph6 size field"));
        }
        let n = six[2..8].iter().fold(0u64, |acc, &x| acc << 6 | x);
        (n as usize, &six[8..])
    };

    let nbits = n * n.saturating_sub(1) / 2;
    if body.len() != nbits.div_ceil(6) {
        return Err(parse_err(
            1,
            format!("expected {} data bytes for {n} vertices, found {}", nbits.div_ceil(6), body.len()),
        ));
    }
    let bit = |k: usize| body[k / 6] >> (5 - k % 6) & 1 == 1;

    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                g.set(i, j);
            }
            k += 1;
        }
    }
    if (nbits..body.len() * 6).any(bit) {
        return Err(parse_err(1, "non-zero padding bits"));
    }
    Ok(g)
}

/// Reads either format: text whose first meaningful line holds two integers is
/// taken as an edge list, anything else as a single graph6 string.
pub fn read_graph(text: &str) -> Result<Graph> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let looks_numeric = first
        .split_whitespace()
        .all(|tok| tok.bytes().all(|b| b.is_ascii_digit()));
    if looks_numeric && first.split_whitespace().count() == 2 {
        parse_edge_list(text)
    } else {
        parse_graph6(first)
    }
}
