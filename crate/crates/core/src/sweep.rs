//! One- and two-axis scans over static depth and frequency.
//!
//! `N_s` depends only on the depth and `N_o` only on the frequency, so each is
//! computed once per distinct axis value and shared by every point that
//! needs it. Records always come back in row-major axis order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::Numerics;
use crate::observables::final_pair_number;
use crate::potential::{PotentialMode, WellParameters};

pub const CSV_HEADER: &str = "Vs_over_c2,omega_over_c2,N_s,N_o,N_c,dN";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisParam {
    StaticDepth,
    Omega,
}

impl fmt::Display for AxisParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisParam::StaticDepth => "Vs",
            AxisParam::Omega => "omega",
        })
    }
}

impl FromStr for AxisParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Vs" | "vs" | "V_s" => Ok(AxisParam::StaticDepth),
            "omega" | "w" => Ok(AxisParam::Omega),
            _ => Err(Error::InvalidParameter(format!(
                "unknown sweep parameter '{s}'"
            ))),
        }
    }
}

/// Inclusive range `start:stop:step` in units of `c²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub param: AxisParam,
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(param: AxisParam, start: f64, stop: f64, step: f64) -> Result<Self> {
        let axis = Self {
            param,
            start,
            stop,
            step,
        };
        axis.validate()?;
        Ok(axis)
    }

    /// Single-value axis.
    pub fn point(param: AxisParam, value: f64) -> Self {
        Self {
            param,
            start: value,
            stop: value,
            step: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let finite = self.start.is_finite() && self.stop.is_finite() && self.step.is_finite();
        if !finite || self.step <= 0.0 || self.start > self.stop || self.start < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "invalid {} axis {}:{}:{}",
                self.param, self.start, self.stop, self.step
            )));
        }
        Ok(())
    }

    /// `start + i·step` for every `i` that does not overshoot `stop`.
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| {
                let v = self.start + i as f64 * self.step;
                // strip representation noise such as 0.30000000000000004
                (v * 1e12).round() / 1e12
            })
            .collect()
    }
}

impl FromStr for Axis {
    type Err = Error;

    /// `Vs=0:3:0.03` or `omega=1.5`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("malformed axis '{s}'"));
        let (name, range) = s.split_once('=').ok_or_else(bad)?;
        let param: AxisParam = name.trim().parse()?;
        let parts: Vec<f64> = range
            .split(':')
            .map(|x| x.trim().parse::<f64>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match parts.as_slice() {
            [v] => {
                let axis = Axis::point(param, *v);
                axis.validate()?;
                Ok(axis)
            }
            [a, b, c] => Axis::new(param, *a, *b, *c),
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPlan {
    pub axes: Vec<Axis>,
    /// Supplies the fixed depth or frequency when no axis covers it, plus
    /// `V_o`, `D`, `W`, shape and sign for every point.
    pub fixed: WellParameters,
    pub numerics: Numerics,
    pub output: Option<PathBuf>,
    pub use_cache: bool,
}

impl SweepPlan {
    pub fn new(axes: Vec<Axis>, fixed: WellParameters, numerics: Numerics) -> Self {
        Self {
            axes,
            fixed,
            numerics,
            output: None,
            use_cache: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidParameter(format!(
                "a sweep needs one or two axes, got {}",
                self.axes.len()
            )));
        }
        if self.axes.len() == 2 && self.axes[0].param == self.axes[1].param {
            return Err(Error::InvalidParameter(
                "both axes scan the same parameter".into(),
            ));
        }
        for a in &self.axes {
            a.validate()?;
        }
        self.fixed.validate()
    }

    /// `(V_s/c², ω/c²)` for every point in row-major axis order.
    pub fn points(&self) -> Vec<(f64, f64)> {
        let c2 = self.numerics.speed_of_light.powi(2);
        let fixed = |p: AxisParam| match p {
            AxisParam::StaticDepth => self.fixed.static_depth / c2,
            AxisParam::Omega => self.fixed.omega / c2,
        };
        let place = |p: AxisParam, v: f64, other: f64| match p {
            AxisParam::StaticDepth => (v, other),
            AxisParam::Omega => (other, v),
        };
        match self.axes.as_slice() {
            [a] => {
                let other = match a.param {
                    AxisParam::StaticDepth => fixed(AxisParam::Omega),
                    AxisParam::Omega => fixed(AxisParam::StaticDepth),
                };
                a.values()
                    .into_iter()
                    .map(|v| place(a.param, v, other))
                    .collect()
            }
            [outer, inner] => {
                let inner_values = inner.values();
                let mut pts = Vec::new();
                for o in outer.values() {
                    for &i in &inner_values {
                        let (vs, w) = match outer.param {
                            AxisParam::StaticDepth => (o, i),
                            AxisParam::Omega => (i, o),
                        };
                        pts.push((vs, w));
                    }
                }
                pts
            }
            _ => Vec::new(),
        }
    }

    fn params_at(&self, vs_over_c2: f64, omega_over_c2: f64) -> WellParameters {
        let c2 = self.numerics.speed_of_light.powi(2);
        WellParameters {
            static_depth: vs_over_c2 * c2,
            omega: omega_over_c2 * c2,
            ..self.fixed
        }
    }

    pub fn digest(&self) -> String {
        self.numerics.digest(&self.fixed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub vs_over_c2: f64,
    pub omega_over_c2: f64,
    pub n_s: f64,
    pub n_o: f64,
    pub n_c: f64,
    pub gain: f64,
}

impl SweepRecord {
    pub fn new(vs_over_c2: f64, omega_over_c2: f64, n_s: f64, n_o: f64, n_c: f64) -> Self {
        Self {
            vs_over_c2,
            omega_over_c2,
            n_s,
            n_o,
            n_c,
            gain: n_c - n_s - n_o,
        }
    }

    pub fn csv_row(&self) -> String {
        [
            self.vs_over_c2,
            self.omega_over_c2,
            self.n_s,
            self.n_o,
            self.n_c,
            self.gain,
        ]
        .iter()
        .map(|&x| format_sig9(x))
        .collect::<Vec<_>>()
        .join(",")
    }
}

/// `printf("%.9g")`.
pub fn format_sig9(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= DIGITS {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Key(u64, u64);

impl Key {
    fn of(vs: f64, omega: f64) -> Self {
        Key(vs.to_bits(), omega.to_bits())
    }
}

/// Zero for a potential that vanishes identically, otherwise a full run.
fn single_run(params: &WellParameters, mode: PotentialMode, numerics: &Numerics) -> Result<f64> {
    if params.max_abs_potential(mode) == 0.0 {
        return Ok(0.0);
    }
    final_pair_number(params, mode, &numerics.basis()?, &numerics.stepper()?)
}

fn wrap(vs: f64, omega: f64) -> impl Fn(Error) -> Error {
    move |e| Error::SweepPoint {
        vs_over_c2: vs,
        omega_over_c2: omega,
        source: Box::new(e),
    }
}

/// Path of the resumption journal for a sweep written to `output`.
pub fn journal_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".journal");
    PathBuf::from(name)
}

/// Path of the metadata sidecar for a sweep written to `output`.
pub fn metadata_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_owned();
    name.push(".meta");
    PathBuf::from(name)
}

struct Journal {
    file: Mutex<BufWriter<File>>,
    done: HashMap<Key, [f64; 3]>,
}

impl Journal {
    fn open(path: &Path, digest: &str) -> Result<Self> {
        let mut done = HashMap::new();
        if path.exists() {
            let reader = BufReader::new(File::open(path)?);
            let mut lines = reader.lines();
            let header = lines.next().transpose()?.unwrap_or_default();
            if header.trim() != format!("# digest {digest}") {
                return Err(Error::Malformed(format!(
                    "journal {} belongs to different numerics; remove it to start over",
                    path.display()
                )));
            }
            for line in lines {
                let line = line?;
                let bits: Vec<u64> = line
                    .split_whitespace()
                    .map(|h| u64::from_str_radix(h, 16))
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::Malformed(format!("bad journal line '{line}'")))?;
                // a torn final line from an interrupted run is skipped
                if let [vs, w, ns, no, nc] = bits[..] {
                    done.insert(
                        Key(vs, w),
                        [f64::from_bits(ns), f64::from_bits(no), f64::from_bits(nc)],
                    );
                }
            }
            let file = OpenOptions::new().append(true).open(path)?;
            Ok(Self {
                file: Mutex::new(BufWriter::new(file)),
                done,
            })
        } else {
            let mut file = BufWriter::new(File::create(path)?);
            writeln!(file, "# digest {digest}")?;
            file.flush()?;
            Ok(Self {
                file: Mutex::new(file),
                done,
            })
        }
    }

    fn record(&self, key: Key, values: [f64; 3]) -> Result<()> {
        let mut f = self.file.lock().expect("journal lock");
        writeln!(
            f,
            "{:016x} {:016x} {:016x} {:016x} {:016x}",
            key.0,
            key.1,
            values[0].to_bits(),
            values[1].to_bits(),
            values[2].to_bits()
        )?;
        f.flush()?;
        Ok(())
    }
}

/// Runs every point of the plan; see the module docs for caching and order.
///
/// When `plan.output` is set, finished points are journaled next to it and a
/// rerun with matching numerics skips them; the CSV and metadata sidecar are
/// written on success.
pub fn run_sweep(plan: &SweepPlan) -> Result<Vec<SweepRecord>> {
    plan.validate()?;
    plan.numerics.basis()?;
    plan.numerics.stepper()?;
    let started = Instant::now();
    let points = plan.points();
    let digest = plan.digest();
    let journal = match &plan.output {
        Some(out) => Some(Journal::open(&journal_path(out), &digest)?),
        None => None,
    };
    let done = |k: &Key| journal.as_ref().map_or(false, |j| j.done.contains_key(k));
    let pending: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(vs, w)| !done(&Key::of(vs, w)))
        .collect();

    let (statics, oscillating) = if plan.use_cache {
        let statics: BTreeMap<u64, f64> = pending.iter().map(|p| (p.0.to_bits(), p.0)).collect();
        let oscs: BTreeMap<u64, f64> = pending.iter().map(|p| (p.1.to_bits(), p.1)).collect();
        let s = statics
            .into_values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&vs| {
                let p = plan.params_at(vs, 0.0);
                single_run(&p, PotentialMode::StaticOnly, &plan.numerics)
                    .map(|n| (vs.to_bits(), n))
                    .map_err(wrap(vs, f64::NAN))
            })
            .collect::<Result<HashMap<u64, f64>>>()?;
        let o = oscs
            .into_values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|&w| {
                let p = plan.params_at(0.0, w);
                single_run(&p, PotentialMode::OscillatingOnly, &plan.numerics)
                    .map(|n| (w.to_bits(), n))
                    .map_err(wrap(f64::NAN, w))
            })
            .collect::<Result<HashMap<u64, f64>>>()?;
        (Some(s), Some(o))
    } else {
        (None, None)
    };

    let fresh: HashMap<Key, [f64; 3]> = pending
        .par_iter()
        .map(|&(vs, w)| {
            let p = plan.params_at(vs, w);
            let n_s = match &statics {
                Some(cache) => cache[&vs.to_bits()],
                None => single_run(&p, PotentialMode::StaticOnly, &plan.numerics)
                    .map_err(wrap(vs, w))?,
            };
            let n_o = match &oscillating {
                Some(cache) => cache[&w.to_bits()],
                None => single_run(&p, PotentialMode::OscillatingOnly, &plan.numerics)
                    .map_err(wrap(vs, w))?,
            };
            let n_c =
                single_run(&p, PotentialMode::Combined, &plan.numerics).map_err(wrap(vs, w))?;
            let key = Key::of(vs, w);
            if let Some(j) = &journal {
                j.record(key, [n_s, n_o, n_c])?;
            }
            Ok((key, [n_s, n_o, n_c]))
        })
        .collect::<Result<_>>()?;

    let records: Vec<SweepRecord> = points
        .iter()
        .map(|&(vs, w)| {
            let key = Key::of(vs, w);
            let [n_s, n_o, n_c] = fresh
                .get(&key)
                .or_else(|| journal.as_ref().and_then(|j| j.done.get(&key)))
                .copied()
                .expect("every point computed or journaled");
            SweepRecord::new(vs, w, n_s, n_o, n_c)
        })
        .collect();

    if let Some(out) = &plan.output {
        write_csv(out, &records)?;
        write_metadata(plan, &records, started.elapsed().as_secs_f64())?;
    }
    Ok(records)
}

pub fn write_csv(path: &Path, records: &[SweepRecord]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let mut f = BufWriter::new(File::create(path)?);
    writeln!(f, "{CSV_HEADER}")?;
    for r in records {
        writeln!(f, "{}", r.csv_row())?;
    }
    f.flush()?;
    Ok(())
}

fn write_metadata(plan: &SweepPlan, records: &[SweepRecord], wall_time: f64) -> Result<()> {
    let out = plan.output.as_ref().expect("output path");
    let n = &plan.numerics;
    let c2 = n.speed_of_light.powi(2);
    let axes: Vec<String> = plan
        .axes
        .iter()
        .map(|a| format!("{}={}:{}:{}", a.param, a.start, a.stop, a.step))
        .collect();
    let created = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let text = |v: &str| format!("\"{v}\"");
    let fields: Vec<(&str, String)> = vec![
        ("code_version", text(env!("CARGO_PKG_VERSION"))),
        ("digest", text(&plan.digest())),
        ("axes", text(&axes.join(" "))),
        ("points", records.len().to_string()),
        ("L", n.length.to_string()),
        ("Nz", n.points.to_string()),
        ("c", n.speed_of_light.to_string()),
        (
            "cutoff_over_c2",
            n.cutoff_over_c2.map_or("null".into(), |x| x.to_string()),
        ),
        ("dt", n.dt.to_string()),
        ("T", n.total_time.to_string()),
        ("midpoint_sampling", n.midpoint_sampling.to_string()),
        (
            "Vo_over_c2",
            (plan.fixed.oscillating_depth / c2).to_string(),
        ),
        ("D", plan.fixed.width.to_string()),
        ("W", plan.fixed.edge.to_string()),
        ("shape", text(&format!("{:?}", plan.fixed.shape))),
        ("sign", text(&format!("{:?}", plan.fixed.sign))),
        ("workers", rayon::current_num_threads().to_string()),
        ("created_unix", created.to_string()),
        ("wall_time_s", format!("{wall_time:.3}")),
    ];
    let body: Vec<String> = fields
        .iter()
        .map(|(k, v)| format!("  \"{k}\": {v}"))
        .collect();
    let mut f = BufWriter::new(File::create(metadata_path(out))?);
    writeln!(f, "{{\n{}\n}}", body.join(",\n"))?;
    f.flush()?;
    Ok(())
}

/// Reads a sweep CSV, checking the header and every row's gain checksum to
/// the precision of its nine printed digits.
pub fn read_csv(path: &Path) -> Result<Vec<SweepRecord>> {
    let reader = BufReader::new(File::open(path)?);
    let mut lines = reader.lines();
    let header = lines.next().transpose()?.unwrap_or_default();
    if header != CSV_HEADER {
        return Err(Error::Malformed(format!("unexpected header '{header}'")));
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|x| x.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Malformed(format!("row {}: '{line}'", i + 1)))?;
        let [vs, w, ns, no, nc, dn] = v[..] else {
            return Err(Error::Malformed(format!(
                "row {} has {} fields",
                i + 1,
                v.len()
            )));
        };
        let scale = [ns, no, nc, dn].iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if (dn - (nc - ns - no)).abs() > 3e-8 * scale {
            return Err(Error::Malformed(format!(
                "row {}: dN checksum failed",
                i + 1
            )));
        }
        records.push(SweepRecord {
            vs_over_c2: vs,
            omega_over_c2: w,
            n_s: ns,
            n_o: no,
            n_c: nc,
            gain: dn,
        });
    }
    Ok(records)
}

/// Largest gain; ties go to the smaller frequency, then the smaller depth.
pub fn find_optimum(records: &[SweepRecord]) -> Result<SweepRecord> {
    records
        .iter()
        .copied()
        .reduce(|best, r| {
            let better = r.gain > best.gain
                || (r.gain == best.gain
                    && (r.omega_over_c2 < best.omega_over_c2
                        || (r.omega_over_c2 == best.omega_over_c2
                            && r.vs_over_c2 < best.vs_over_c2)));
            if better {
                r
            } else {
                best
            }
        })
        .ok_or(Error::EmptyRecords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig9_matches_printf() {
        let cases = [
            (2.1, "2.1"),
            (0.0, "0"),
            (2.557, "2.557"),
            (1.0 / 3.0, "0.333333333"),
            (123456789.4, "123456789"),
            (1234567894.0, "1.23456789e+09"),
            (1.5e-7, "1.5e-07"),
            (0.0001234, "0.0001234"),
            (-1.673, "-1.673"),
            (4.098765432101, "4.09876543"),
            (0.30000000000000004, "0.3"),
        ];
        for (x, want) in cases {
            assert_eq!(format_sig9(x), want, "{x}");
        }
    }

    #[test]
    fn axis_values_and_parsing() {
        let a: Axis = "Vs=0:3:0.03".parse().unwrap();
        let v = a.values();
        assert_eq!(v.len(), 101);
        assert_eq!(v[10], 0.3);
        assert_eq!(*v.last().unwrap(), 3.0);
        let b: Axis = "omega=0.02:3.5:0.02".parse().unwrap();
        assert_eq!(b.values().len(), 175);
        let c: Axis = "omega=1.5".parse().unwrap();
        assert_eq!(c.values(), vec![1.5]);
        assert!("Vs=3:0:0.1".parse::<Axis>().is_err());
        assert!("Vs=0:1:0".parse::<Axis>().is_err());
        assert!("depth=0:1:0.1".parse::<Axis>().is_err());
        assert!("Vs=0:1".parse::<Axis>().is_err());
    }

    #[test]
    fn row_major_points() {
        let plan = SweepPlan::new(
            vec![
                Axis::new(AxisParam::Omega, 0.1, 0.2, 0.1).unwrap(),
                Axis::new(AxisParam::StaticDepth, 2.0, 3.0, 0.5).unwrap(),
            ],
            WellParameters::default(),
            Numerics::fast(),
        );
        assert_eq!(
            plan.points(),
            vec![
                (2.0, 0.1),
                (2.5, 0.1),
                (3.0, 0.1),
                (2.0, 0.2),
                (2.5, 0.2),
                (3.0, 0.2)
            ]
        );
        let one = SweepPlan::new(
            vec![Axis::new(AxisParam::StaticDepth, 0.0, 0.1, 0.05).unwrap()],
            WellParameters::in_c2_units(0.0, 1.47, 1.5),
            Numerics::fast(),
        );
        assert_eq!(one.points(), vec![(0.0, 1.5), (0.05, 1.5), (0.1, 1.5)]);
    }

    #[test]
    fn plan_validation() {
        let mut plan = SweepPlan::new(vec![], WellParameters::default(), Numerics::fast());
        assert!(plan.validate().is_err());
        plan.axes = vec![
            Axis::point(AxisParam::Omega, 1.0),
            Axis::point(AxisParam::Omega, 2.0),
        ];
        assert!(plan.validate().is_err());
    }

    fn rec(vs: f64, w: f64, gain: f64) -> SweepRecord {
        SweepRecord::new(vs, w, 0.0, 0.0, gain)
    }

    #[test]
    fn optimum_and_ties() {
        assert!(matches!(find_optimum(&[]), Err(Error::EmptyRecords)));
        let single = [rec(2.0, 0.5, -1.0)];
        assert_eq!(find_optimum(&single).unwrap(), single[0]);
        let rs = [
            rec(2.5, 0.24, 3.0),
            rec(2.6, 0.08, 4.0),
            rec(2.0, 0.40, 4.0),
            rec(2.1, 0.08, 4.0),
        ];
        let best = find_optimum(&rs).unwrap();
        assert_eq!((best.vs_over_c2, best.omega_over_c2), (2.1, 0.08));
    }

    #[test]
    fn gain_checksum() {
        let r = SweepRecord::new(2.1, 1.5, 0.3003, 0.6156, 3.4438);
        assert_eq!(r.gain, r.n_c - r.n_s - r.n_o);
    }

    #[test]
    fn csv_round_trip_and_checksum() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.csv");
        let rs = vec![
            SweepRecord::new(2.1, 1.5, 0.300371234, 0.615621987, 3.44383123),
            SweepRecord::new(0.0, 1.5, 0.0, 0.6156, 0.6156),
        ];
        write_csv(&path, &rs).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(&format!("{CSV_HEADER}\n")));
        let back = read_csv(&path).unwrap();
        assert_eq!(back.len(), 2);
        assert!((back[0].gain - rs[0].gain).abs() < 1e-8);

        fs::write(&path, format!("{CSV_HEADER}\n2.1,1.5,0.3,0.6,3.4,9.9\n")).unwrap();
        assert!(read_csv(&path).is_err());
        fs::write(&path, "Vs,omega\n").unwrap();
        assert!(read_csv(&path).is_err());
    }
}
