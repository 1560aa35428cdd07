//! Plain-text generator files: `regorb-rep 1` header, group line, optional
//! central words, then one block per generator.

use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Zero;

use super::{scalar_overlap, Origin, RepError, Representation, Result};
use crate::gfplin::{self, FpMatrix};
use crate::permsym::{self, GroupDescriptor, GroupKind};

/// Natural module of `SL_2(5)`, a double cover of `A_5`.
pub const SL2_5_TEXT: &str = "regorb-rep 1
p 5 dim 2 gens 2
group 2.A5 order 120 center 2
zword 2 2
gen 1
1 1
0 1
gen 2
0 1
4 0
";

pub fn builtin_sl2_5() -> Representation {
    parse_rep(SL2_5_TEXT).expect("builtin data is well formed")
}

pub fn format_rep(v: &Representation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "regorb-rep 1");
    let _ = writeln!(s, "p {} dim {} gens {}", v.p, v.dim, v.generators.len());
    let _ = writeln!(s, "group {} order {} center {}", v.group.name(), v.order(), v.group.center_order);
    for w in &v.group.center_words {
        let words: Vec<String> = w.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "zword {}", words.join(" "));
    }
    for (i, g) in v.generators.iter().enumerate() {
        let _ = writeln!(s, "gen {}", i + 1);
        for r in 0..g.rows() {
            let row: Vec<String> = g.row(r).iter().map(u32::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
    }
    s
}

pub fn save_rep(v: &Representation, path: &Path) -> Result<()> {
    std::fs::write(path, format_rep(v)).map_err(|e| RepError::Io(e.to_string()))
}

pub fn load_rep(path: &Path) -> Result<Representation> {
    let text = std::fs::read_to_string(path).map_err(|e| RepError::Io(e.to_string()))?;
    parse_rep(&text)
}

fn err(line: usize, msg: impl Into<String>) -> RepError {
    RepError::Parse { line, msg: msg.into() }
}

/// Reads `key value` pairs from a header line, checking the keys in order.
fn fields<'a>(line: &'a str, no: usize, keys: &[&str]) -> Result<Vec<&'a str>> {
    let toks: Vec<&str> = line.split(' ').collect();
    if toks.len() != 2 * keys.len() {
        return Err(err(no, format!("expected `{}`", keys.iter().map(|k| format!("{k} <..>")).collect::<Vec<_>>().join(" "))));
    }
    keys.iter()
        .enumerate()
        .map(|(i, k)| {
            if toks[2 * i] == *k {
                Ok(toks[2 * i + 1])
            } else {
                Err(err(no, format!("expected `{k}`, found `{}`", toks[2 * i])))
            }
        })
        .collect()
}

fn number<T: std::str::FromStr>(s: &str, no: usize) -> Result<T> {
    s.parse().map_err(|_| err(no, format!("invalid number `{s}`")))
}

/// Splits a group name into base kind and scalar order (`S7`, `A9xC2`, `2.A5xC4`).
fn parse_group_name(name: &str, no: usize) -> Result<(GroupKind, usize, u32)> {
    let (base, a) = match name.rsplit_once("xC") {
        Some((b, a)) if !a.is_empty() && a.bytes().all(|c| c.is_ascii_digit()) => (b, number(a, no)?),
        _ => (name, 1),
    };
    if base.is_empty() {
        return Err(err(no, "empty group name"));
    }
    let numeric = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    let kind = match (&base[..1], &base[1..]) {
        ("S", rest) if numeric(rest) => (GroupKind::Sn, number(rest, no)?),
        ("A", rest) if numeric(rest) => (GroupKind::An, number(rest, no)?),
        _ => (GroupKind::External(base.to_string()), 0),
    };
    Ok((kind.0, kind.1, a))
}

pub fn parse_rep(text: &str) -> Result<Representation> {
    let lines: Vec<&str> = text.split('\n').collect();
    if !text.ends_with('\n') {
        return Err(err(lines.len(), "missing trailing newline"));
    }
    if let Some(i) = lines.iter().position(|l| l.contains('\t')) {
        return Err(err(i + 1, "tab character"));
    }
    let line = |i: usize| -> Result<&str> {
        match lines.get(i) {
            Some(l) if i + 1 < lines.len() => Ok(l.trim_end_matches('\r')),
            _ => Err(err(i + 1, "unexpected end of file")),
        }
    };
    if line(0)? != "regorb-rep 1" {
        return Err(err(1, "expected header `regorb-rep 1`"));
    }
    let f = fields(line(1)?, 2, &["p", "dim", "gens"])?;
    let p: u32 = number(f[0], 2)?;
    let dim: usize = number(f[1], 2)?;
    let k: usize = number(f[2], 2)?;
    gfplin::check_modulus(p).map_err(|_| err(2, format!("modulus {p} is not prime")))?;
    if dim == 0 || k == 0 {
        return Err(err(2, "dimension and generator count must be positive"));
    }
    let f = fields(line(2)?, 3, &["group", "order", "center"])?;
    let (kind, n, a) = parse_group_name(f[0], 3)?;
    let order: BigUint = number(f[1], 3)?;
    let center: u64 = number(f[2], 3)?;
    let mut idx = 3;
    let mut center_words = Vec::new();
    while let Some(rest) = line(idx)?.strip_prefix("zword ") {
        let w: Vec<usize> = rest.split(' ').map(|t| number(t, idx + 1)).collect::<Result<_>>()?;
        if w.iter().any(|&g| g == 0 || g > k) {
            return Err(err(idx + 1, "generator index out of range"));
        }
        center_words.push(w);
        idx += 1;
    }
    let mut generators = Vec::with_capacity(k);
    for g in 0..k {
        let header = line(idx)?;
        if header != format!("gen {}", g + 1) {
            return Err(err(idx + 1, format!("expected `gen {}`", g + 1)));
        }
        idx += 1;
        let mut data = Vec::with_capacity(dim * dim);
        for _ in 0..dim {
            let row: Vec<u32> = line(idx)?.split(' ').map(|t| number(t, idx + 1)).collect::<Result<_>>()?;
            if row.len() != dim {
                return Err(err(idx + 1, format!("expected {dim} entries, found {}", row.len())));
            }
            if row.iter().any(|&x| x >= p) {
                return Err(err(idx + 1, format!("entry outside [0, {p})")));
            }
            data.extend(row);
            idx += 1;
        }
        let m = FpMatrix::new(p, dim, dim, data).map_err(|e| err(idx, e.to_string()))?;
        if !m.is_invertible() {
            return Err(RepError::NotInvertible(g + 1));
        }
        generators.push(m);
    }
    if idx + 1 != lines.len() {
        return Err(err(idx + 1, "trailing content"));
    }
    if a > 1 {
        let lambda = generators.last().and_then(FpMatrix::scalar_value);
        if !(p - 1).is_multiple_of(a) || lambda.map(|l| gfplin::mult_order(l, p)) != Some(a) {
            return Err(err(3, format!("last generator must be a scalar of order {a}")));
        }
    }
    let h_count = k - usize::from(a > 1);
    let group_stub = GroupDescriptor {
        kind: kind.clone(),
        n,
        h_order: order.clone(),
        center_order: center,
        center_words: center_words.clone(),
        scalar_order: 1,
        scalar_overlap: 1,
    };
    let stub = Representation {
        p,
        dim,
        generators: generators[..h_count].to_vec(),
        group: group_stub,
        label: String::new(),
        origin: Origin::External,
        twisted: false,
    };
    let overlap = if a > 1 { scalar_overlap(&stub, a)? } else { 1 };
    let h_order = &order * overlap / a;
    if (&h_order * a / overlap) != order || h_order.is_zero() {
        return Err(err(3, "order is inconsistent with the scalar subgroup"));
    }
    let (expected_gens, expected_order) = match kind {
        GroupKind::Sn => (n.saturating_sub(1), Some(permsym::factorial(n))),
        GroupKind::An => (n.saturating_sub(2), Some(permsym::factorial(n) / 2u32)),
        GroupKind::External(_) => (h_count, None),
    };
    if h_count != expected_gens {
        return Err(RepError::GeneratorCount { expected: expected_gens + usize::from(a > 1), found: k });
    }
    if expected_order.is_some_and(|o| o != h_order) {
        return Err(err(3, format!("order {order} does not match {}", f[0])));
    }
    let group = GroupDescriptor { h_order, scalar_order: a, scalar_overlap: overlap, ..stub.group };
    permsym::group_order(&group).map_err(|e| err(3, e.to_string()))?;
    Ok(Representation {
        p,
        dim,
        generators,
        label: format!("{} over F{p}", group.name()),
        group,
        origin: Origin::External,
        twisted: false,
    })
}
