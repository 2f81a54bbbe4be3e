//! On-disk cache of universal Witt polynomials.
//!
//! Text format, one polynomial per line:
//!
//! ```text
//! swancond-witt-cache v1
//! p 2
//! length 2
//! sha256 <hex digest of every following line, newline-terminated>
//! S0 0,0,1,0:1 1,0,0,0:1
//! S1 ...
//! P0 ...
//! N1 ...
//! ```
//!
//! Each term is `e_0,…,e_k:c` with the exponent vector over
//! `X0..Xm[,Y0..Ym]`; terms are sorted by exponent vector.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use sha2::{Digest, Sha256};

use super::{IntPoly, UniversalKind, WittContext};
use crate::algebra::check_prime;
use crate::{Error, Result};

pub const CACHE_ENV: &str = "SWANCOND_CACHE_DIR";
const MAGIC: &str = "swancond-witt-cache v1";
const KINDS: [UniversalKind; 3] = [UniversalKind::Sum, UniversalKind::Product, UniversalKind::Negation];

pub fn cache_file(dir: &Path, p: u32, length: usize) -> PathBuf {
    dir.join(format!("witt-p{p}-len{length}.txt"))
}

fn body_lines(ctx: &WittContext) -> String {
    let mut body = String::new();
    for kind in KINDS {
        for (n, up) in ctx.polys(kind).iter().enumerate() {
            body.push(kind.letter());
            body.push_str(&n.to_string());
            for (e, c) in up.poly().terms() {
                let exps: Vec<String> = e.iter().map(u32::to_string).collect();
                body.push_str(&format!(" {}:{c}", exps.join(",")));
            }
            body.push('\n');
        }
    }
    body
}

fn digest(body: &str) -> String {
    hex::encode(Sha256::digest(body.as_bytes()))
}

pub fn serialize(ctx: &WittContext) -> String {
    let body = body_lines(ctx);
    format!("{MAGIC}\np {}\nlength {}\nsha256 {}\n{body}", ctx.p(), ctx.length(), digest(&body))
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

fn header_value<'a>(line: Option<(usize, &'a str)>, key: &str, eof: usize) -> Result<(usize, &'a str)> {
    let (pos, line) = line.ok_or_else(|| perr(eof, format!("missing `{key}` line")))?;
    let rest = line
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(' '))
        .ok_or_else(|| perr(pos, format!("expected `{key} <value>`")))?;
    Ok((pos, rest))
}

/// Parses and validates cache text (header, checksum, shape and a ghost
/// identity spot check).
pub fn parse(text: &str) -> Result<WittContext> {
    let mut offset = 0;
    let mut lines = text.split_inclusive('\n').map(|l| {
        let pos = offset;
        offset += l.len();
        (pos, l.strip_suffix('\n').unwrap_or(l))
    });
    let eof = text.len();
    match lines.next() {
        Some((_, l)) if l == MAGIC => {}
        _ => return Err(perr(0, "bad magic line")),
    }
    let (pos, p) = header_value(lines.next(), "p", eof)?;
    let p: u32 = p.parse().map_err(|_| perr(pos, "prime is not an integer"))?;
    check_prime(p).map_err(|e| perr(pos, e.to_string()))?;
    let (pos, length) = header_value(lines.next(), "length", eof)?;
    let length: usize = length.parse().map_err(|_| perr(pos, "length is not an integer"))?;
    if length == 0 || length > 8 {
        return Err(perr(pos, format!("unsupported length {length}")));
    }
    let (pos, sum) = header_value(lines.next(), "sha256", eof)?;
    let body_start = pos + "sha256 ".len() + sum.len() + 1;
    let body = text.get(body_start.min(text.len())..).unwrap_or("");
    if digest(body) != sum {
        return Err(perr(pos, "checksum mismatch"));
    }

    let mut polys: Vec<Vec<IntPoly>> = vec![Vec::new(), Vec::new(), Vec::new()];
    for (k, kind) in KINDS.iter().enumerate() {
        let nvars = if *kind == UniversalKind::Negation { length } else { 2 * length };
        for n in 0..length {
            let (pos, line) = lines.next().ok_or_else(|| perr(eof, "truncated polynomial list"))?;
            let mut fields = line.split(' ');
            let label = format!("{}{n}", kind.letter());
            if fields.next() != Some(label.as_str()) {
                return Err(perr(pos, format!("expected polynomial {label}")));
            }
            let mut terms = BTreeMap::new();
            for field in fields {
                let (exps, coeff) = field
                    .split_once(':')
                    .ok_or_else(|| perr(pos, format!("malformed term `{field}`")))?;
                let exps: Vec<u32> = exps
                    .split(',')
                    .map(|e| e.parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| perr(pos, format!("bad exponents in `{field}`")))?;
                if exps.len() != nvars {
                    return Err(perr(pos, format!("term `{field}` has wrong arity")));
                }
                // X_i, Y_i have weight p^i; every term of S_n, P_n, N_n has weight at most 2p^n.
                let weight = exps
                    .iter()
                    .enumerate()
                    .try_fold(0u64, |acc, (i, &e)| acc.checked_add(u64::from(e).checked_mul(u64::from(p).pow((i % length) as u32))?));
                if weight.is_none_or(|w| w > 2 * u64::from(p).pow(n as u32)) {
                    return Err(perr(pos, format!("term `{field}` exceeds the weight of {label}")));
                }
                let c: BigInt = coeff.parse().map_err(|_| perr(pos, format!("bad coefficient in `{field}`")))?;
                if terms.insert(exps, c).is_some() {
                    return Err(perr(pos, format!("duplicate monomial in {label}")));
                }
            }
            polys[k].push(IntPoly::from_raw(nvars, terms));
        }
    }
    if let Some((pos, l)) = lines.next() {
        if !l.is_empty() {
            return Err(perr(pos, "trailing data"));
        }
    }
    let neg = polys.pop().unwrap();
    let prod = polys.pop().unwrap();
    let sum = polys.pop().unwrap();
    let ctx = WittContext::from_parts(p, length, sum, prod, neg);
    ctx.self_check().map_err(|e| perr(0, e.to_string()))?;
    Ok(ctx)
}

pub fn write(dir: &Path, ctx: &WittContext) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = cache_file(dir, ctx.p(), ctx.length());
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, serialize(ctx))?;
    fs::rename(&tmp, &path)?;
    Ok(path)
}

/// Reads a cached context; `Ok(None)` when no file exists.
pub fn load(dir: &Path, p: u32, m: usize) -> Result<Option<WittContext>> {
    let path = cache_file(dir, p, m + 1);
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let ctx = parse(&text).map_err(|e| Error::CorruptCache { path: path.clone(), msg: e.to_string() })?;
    if ctx.p() != p || ctx.length() != m + 1 {
        return Err(Error::CorruptCache { path, msg: "header does not match file name".into() });
    }
    Ok(Some(ctx))
}

pub fn load_or_build(dir: &Path, p: u32, m: usize, cap: usize) -> Result<WittContext> {
    if m + 1 > cap {
        return Err(Error::LengthCap { length: m + 1, cap });
    }
    if let Some(ctx) = load(dir, p, m)? {
        return Ok(ctx);
    }
    let ctx = WittContext::build_with_cap(p, m, cap)?;
    write(dir, &ctx)?;
    Ok(ctx)
}

/// Removes every cache file in `dir`; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    let entries = match fs::read_dir(dir) {
        Ok(e) => e,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
        Err(e) => return Err(e.into()),
    };
    let mut removed = 0;
    for entry in entries {
        let path = entry?.path();
        let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
        if name.starts_with("witt-p") && (name.ends_with(".txt") || name.ends_with(".tmp")) {
            fs::remove_file(&path)?;
            removed += 1;
        }
    }
    Ok(removed)
}
