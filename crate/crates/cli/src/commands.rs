use anyhow::{bail, Context, Result};
use num_rational::BigRational;
use serde_json::{json, Value};

use polyzeta::ncalg::NcPoly;
use polyzeta::ratseries::{minimize, RatExpr};
use polyzeta::regular::{
    finite_part, gamma_char, negindex_to_starcombo, zeta_shuffle_char, CharValue,
};
use polyzeta::special::{gamma_yr, harmonic_sum, li_numeric, mzv, Complex, Real};
use polyzeta::verify::{self, Entry, VerifyConfig};
use polyzeta::words::{lyndon_words, Alphabet, Composition, LetterSet};

type Q = BigRational;

/// Global settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub prec_bits: usize,
    pub err: f64,
    pub max_weight: usize,
    pub jobs: usize,
    pub filter: Vec<String>,
}

pub const MIN_PREC_BITS: usize = 64;
pub const MAX_WEIGHT_LIMIT: usize = 12;

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.prec_bits < MIN_PREC_BITS {
            bail!("--prec-bits must be at least {MIN_PREC_BITS}");
        }
        if self.max_weight > MAX_WEIGHT_LIMIT {
            bail!("--max-weight must be at most {MAX_WEIGHT_LIMIT}");
        }
        if !(self.err > 0.0 && self.err < 1.0) {
            bail!("--err must lie in (0, 1)");
        }
        if self.jobs == 0 {
            bail!("--jobs must be positive");
        }
        Ok(())
    }
}

/// What a command prints, in both formats.
pub struct Output {
    pub text: String,
    pub json: Value,
    /// False when `verify` saw a failing item.
    pub ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output {
            text: text.into(),
            json,
            ok: true,
        }
    }
}

fn alphabet_of(texts: &[&str]) -> Alphabet {
    if texts.iter().any(|t| t.contains('y')) {
        Alphabet::Y
    } else {
        Alphabet::X
    }
}

/// Significant digits worth printing for a value known to within `bound`.
fn digits_for(value: f64, bound: f64, prec_bits: usize) -> usize {
    let max = (prec_bits as f64 * std::f64::consts::LOG10_2) as usize;
    if bound <= 0.0 || value == 0.0 {
        return max;
    }
    let d = (value.abs() / bound).log10().ceil() as usize + 2;
    d.clamp(6, max)
}

fn real_json(v: &Real, bound: f64, prec_bits: usize) -> (String, Value) {
    let s = v.to_decimal(digits_for(v.to_f64(), bound, prec_bits));
    (
        s.clone(),
        json!({ "value": s, "bound": format!("{bound:e}") }),
    )
}

pub fn parse_complex(s: &str, prec: usize) -> Result<Complex> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("bad complex number `{s}` (expected a, bi or a+bi)");
    let Some(body) = t.strip_suffix('i') else {
        return Complex::parse(&t, "0", prec).with_context(bad);
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let b = body.as_bytes();
    let split = (1..b.len())
        .rev()
        .find(|&i| (b[i] == b'+' || b[i] == b'-') && !matches!(b[i - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other.trim_start_matches('+'),
    };
    Complex::parse(re, im, prec).with_context(bad)
}

pub fn lyndon(alphabet: &str, cfg: &RunConfig) -> Result<Output> {
    let set = match alphabet {
        "x" | "X" => LetterSet::X,
        "y" | "Y" => LetterSet::Y {
            max_index: cfg.max_weight as u32,
        },
        other => bail!("unknown alphabet `{other}` (expected x or y)"),
    };
    let words: Vec<String> = lyndon_words(set, cfg.max_weight)
        .iter()
        .map(|w| w.to_string())
        .collect();
    Ok(Output::new(words.join("\n"), json!(words)))
}

fn poly_output(p: &NcPoly<Q>) -> Output {
    Output::new(p.to_string(), p.to_json())
}

pub fn shuffle(p: &str, q: &str) -> Result<Output> {
    let a = alphabet_of(&[p, q]);
    Ok(poly_output(
        &NcPoly::parse(a, p)?.shuffle(&NcPoly::parse(a, q)?)?,
    ))
}

pub fn stuffle(p: &str, q: &str) -> Result<Output> {
    let a = alphabet_of(&[p, q]);
    if a != Alphabet::Y {
        bail!(polyzeta::Error::StuffleOnX);
    }
    Ok(poly_output(
        &NcPoly::parse(a, p)?.stuffle(&NcPoly::parse(a, q)?)?,
    ))
}

pub fn star(expr: &str, cfg: &RunConfig) -> Result<Output> {
    let e: RatExpr<Q> = expr.parse()?;
    let s = e.to_trunc(cfg.max_weight)?;
    Ok(Output::new(
        s.poly().to_string(),
        json!({ "expr": e.to_string(), "max_weight": cfg.max_weight, "series": s.poly().to_json() }),
    ))
}

pub fn minimize_cmd(expr: &str) -> Result<Output> {
    let e: RatExpr<Q> = expr.parse()?;
    let rep = e.to_rep()?;
    let m = minimize(&rep);
    let text = format!(
        "{e}\ndimension {} -> {}\n{:#}",
        rep.dim(),
        m.dim(),
        m.to_json()
    );
    Ok(Output::new(
        text,
        json!({ "expr": e.to_string(), "dim_before": rep.dim(), "dim": m.dim(), "rep": m.to_json() }),
    ))
}

pub fn mzv_cmd(index: &str, cfg: &RunConfig) -> Result<Output> {
    let idx: Composition = index.parse()?;
    let v = mzv(&idx, cfg.err, cfg.prec_bits)?;
    let (s, mut j) = real_json(&v.value, v.bound, cfg.prec_bits);
    j["index"] = json!(idx.to_string());
    j["terms"] = json!(v.terms);
    Ok(Output::new(
        format!("zeta{idx} = {s}  (bound {:e})", v.bound),
        j,
    ))
}

pub fn hsum(index: &str, n: u64) -> Result<Output> {
    let idx: Composition = index.parse()?;
    let h = harmonic_sum(&idx, n);
    Ok(Output::new(
        format!("H{idx}({n}) = {h}"),
        json!({ "index": idx.to_string(), "n": n, "value": h.to_string() }),
    ))
}

fn complex_json(z: &Complex, bound: f64, prec_bits: usize) -> (String, Value) {
    let (re, im) = z.to_f64();
    let digits = digits_for(re.abs().max(im.abs()), bound, prec_bits);
    let s = z.to_decimal(digits);
    let j = json!({
        "re": z.re.to_decimal(digits),
        "im": z.im.to_decimal(digits),
        "bound": format!("{bound:e}"),
    });
    (s, j)
}

pub fn li(index: &str, z: &str, cfg: &RunConfig) -> Result<Output> {
    let idx: Composition = index.parse()?;
    let zc = parse_complex(z, cfg.prec_bits)?;
    let v = li_numeric(&idx, &zc, cfg.err, cfg.prec_bits)?;
    let (s, mut j) = complex_json(&v.value, v.bound, cfg.prec_bits);
    j["index"] = json!(idx.to_string());
    j["z"] = json!(z);
    Ok(Output::new(
        format!("Li{idx}({z}) = {s}  (bound {:e})", v.bound),
        j,
    ))
}

pub fn gammafn(r: u32, z: &str, cfg: &RunConfig) -> Result<Output> {
    let zc = parse_complex(z, cfg.prec_bits)?;
    let v = gamma_yr(r, &zc, cfg.prec_bits)?;
    // the series is summed past 2^-prec with guard bits; the bound is relative
    let (re, im) = v.to_f64();
    let bound = re.hypot(im) * 2f64.powi(8 - cfg.prec_bits as i32);
    let (s, mut j) = complex_json(&v, bound, cfg.prec_bits);
    j["r"] = json!(r);
    j["z"] = json!(z);
    Ok(Output::new(
        format!("Gamma_y{r}(1 + {z}) = {s}  (bound {bound:e})"),
        j,
    ))
}

fn char_string(v: &CharValue, prec_bits: usize) -> String {
    match v.exact() {
        Some(q) => q.to_string(),
        None => v
            .to_real(prec_bits)
            .to_decimal(digits_for(v.to_f64(), v.bound(), prec_bits)),
    }
}

pub fn regularize(index: &str, cfg: &RunConfig) -> Result<Output> {
    let idx: Composition = index.parse()?;
    let combo = negindex_to_starcombo(&idx)?;
    let coeffs: Vec<String> = combo
        .integer_star_coeffs()
        .context("combination is not over (k x1)* atoms")?
        .iter()
        .map(ToString::to_string)
        .collect();
    let gamma = char_string(
        &gamma_char(&combo.to_harmonic()?, cfg.prec_bits)?,
        cfg.prec_bits,
    );
    let zeta = zeta_shuffle_char(&combo)?;
    let fp = finite_part(&combo.scale_expansion()?);
    let text = format!(
        "Li{idx} = {combo}\ncombo [{}]\ngamma = {gamma}\nzeta_shuffle = {zeta}\nfinite part = {fp}",
        coeffs.join(", ")
    );
    Ok(Output::new(
        text,
        json!({
            "index": idx.to_string(),
            "starcombo": combo.to_string(),
            "constant": combo.constant_term().to_string(),
            "combo": coeffs,
            "gamma": gamma,
            "zeta_shuffle": zeta.to_string(),
            "finite_part": fp.to_string(),
        }),
    ))
}

fn entry_line(e: &Entry) -> String {
    let mut s = format!(
        "[{}] {}\n    lhs: {}\n    rhs: {}\n    bound: {}",
        e.status, e.identity_id, e.lhs, e.rhs, e.bound
    );
    if let Some(n) = &e.note {
        s.push_str(&format!("\n    note: {n}"));
    }
    s
}

pub fn verify_cmd(cfg: &RunConfig) -> Result<Output> {
    let vc = VerifyConfig {
        prec_bits: cfg.prec_bits,
        err: cfg.err,
        max_weight: cfg.max_weight,
        jobs: cfg.jobs,
        filter: cfg.filter.clone(),
    };
    let report = verify::run(&vc)?;
    if report.is_empty() {
        bail!("no verification item matches the filter");
    }
    let count = |s: verify::Status| report.iter().filter(|e| e.status == s).count();
    let mut text: Vec<String> = report.iter().map(entry_line).collect();
    text.push(format!(
        "{} items: {} pass, {} fail, {} discrepancy",
        report.len(),
        count(verify::Status::Pass),
        count(verify::Status::Fail),
        count(verify::Status::Discrepancy)
    ));
    Ok(Output {
        text: text.join("\n"),
        json: serde_json::to_value(&report)?,
        ok: verify::all_passed(&report),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            prec_bits: 128,
            err: 1e-10,
            max_weight: 8,
            jobs: 1,
            filter: Vec::new(),
        }
    }

    #[test]
    fn complex_literals() {
        let p = 64;
        let f = |s: &str| parse_complex(s, p).unwrap().to_f64();
        assert_eq!(f("0.5"), (0.5, 0.0));
        assert_eq!(f("0.3+0.2i"), (0.3, 0.2));
        assert_eq!(f("-0.3 - 0.2i"), (-0.3, -0.2));
        assert_eq!(f("i"), (0.0, 1.0));
        assert_eq!(f("-i"), (0.0, -1.0));
        assert_eq!(f("1e-1-2e-1i"), (0.1, -0.2));
        assert!(parse_complex("abc", p).is_err());
    }

    #[test]
    fn config_guards() {
        assert!(cfg().validate().is_ok());
        assert!(RunConfig {
            prec_bits: 32,
            ..cfg()
        }
        .validate()
        .is_err());
        assert!(RunConfig {
            max_weight: 13,
            ..cfg()
        }
        .validate()
        .is_err());
        assert!(RunConfig { err: 0.0, ..cfg() }.validate().is_err());
    }

    #[test]
    fn digits_follow_the_bound() {
        assert_eq!(digits_for(0.8, 1e-10, 256), 12);
        assert_eq!(digits_for(1.0, 0.0, 256), 77);
        assert_eq!(digits_for(1.0, 0.5, 256), 6);
    }
}
