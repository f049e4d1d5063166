//! Text inputs: p grids, theta files and flat `key = value` config files.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::harness::sweep::ThetaMode;
use crate::linalg::Vector;

/// Either a comma list (`200,350,500`) or `lo:hi:count`, which gives `count`
/// log-spaced integers from `lo` to `hi` inclusive.
pub fn parse_p_grid(s: &str) -> Result<Vec<usize>> {
    let bad = |what: &str| Error::Config(format!("bad p grid {s:?}: {what}"));
    let int = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| bad(&format!("{t:?} is not a count")))
    };
    let grid = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [lo, hi, count] = parts[..] else {
            return Err(bad("expected lo:hi:count"));
        };
        let (lo, hi, count) = (int(lo)?, int(hi)?, int(count)?);
        if lo == 0 || hi < lo || count == 0 {
            return Err(bad("need 0 < lo <= hi and count >= 1"));
        }
        if count == 1 {
            vec![lo]
        } else {
            let (a, b) = ((lo as f64).ln(), (hi as f64).ln());
            (0..count)
                .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp().round() as usize)
                .collect()
        }
    } else {
        s.split(',').map(int).collect::<Result<Vec<_>>>()?
    };
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(bad("values must be strictly increasing"));
    }
    Ok(grid)
}

/// Whitespace- or comma-separated numbers; `#` starts a comment.
pub fn read_theta_file(path: &Path) -> Result<Vector> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let values = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| Error::Config(format!("{}: {t:?} is not a number", path.display())))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.is_empty() {
        return Err(Error::Config(format!(
            "{}: no theta entries",
            path.display()
        )));
    }
    Ok(Vector::from_vec(values))
}

/// `gaussian` or `fixed:<file>`.
pub fn parse_theta_mode(s: &str) -> Result<ThetaMode> {
    if s == "gaussian" {
        Ok(ThetaMode::Gaussian)
    } else if let Some(file) = s.strip_prefix("fixed:") {
        Ok(ThetaMode::Fixed(read_theta_file(Path::new(file))?))
    } else {
        Err(Error::Config(format!(
            "bad theta mode {s:?} (expected gaussian or fixed:<file>)"
        )))
    }
}

/// Turns `key = value` lines into `--key value` arguments. Blank lines and
/// `#` comments are skipped; underscores in keys become dashes.
pub fn config_file_args(text: &str) -> Result<Vec<String>> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!(
                "config line {}: expected key = value, got {raw:?}",
                i + 1
            )));
        };
        let key = key.trim().trim_start_matches("--").replace('_', "-");
        if key.is_empty() {
            return Err(Error::Config(format!("config line {}: empty key", i + 1)));
        }
        args.push(format!("--{key}"));
        args.push(value.trim().to_string());
    }
    Ok(args)
}

/// Removes `--config <file>` (or `--config=<file>`) from `argv` and splices the
/// file's arguments in right after the subcommand, so flags given on the
/// command line come later and win.
pub fn expand_config(argv: Vec<String>) -> Result<Vec<String>> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut file = None;
    let mut it = argv.into_iter();
    while let Some(arg) = it.next() {
        if arg == "--config" {
            match it.next() {
                Some(f) => file = Some(f),
                None => return Err(Error::Config("--config needs a file".into())),
            }
        } else if let Some(f) = arg.strip_prefix("--config=") {
            file = Some(f.to_string());
        } else {
            rest.push(arg);
        }
    }
    let Some(file) = file else {
        return Ok(rest);
    };
    let text = fs::read_to_string(&file).map_err(|e| Error::io(&file, e))?;
    let extra = config_file_args(&text)?;
    let at = rest.len().min(2);
    rest.splice(at..at, extra);
    Ok(rest)
}
