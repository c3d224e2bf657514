use qcalab::dirac::{commensurate_momentum, dirac_plane_wave, walk_step, DiracParams, EngineWalk, WalkField};
use qcalab::Real;

use crate::args::{Engine, WalkArgs};
use crate::error::{CliError, Outcome};
use crate::report::{num, Csv, Report};

#[derive(Debug, Clone, PartialEq)]
pub enum Init {
    Delta(usize),
    Gaussian { center: f64, sigma: f64, k0: f64 },
    Plane(i64),
}

fn field<T: std::str::FromStr>(parts: &[&str], i: usize, what: &str) -> Result<T, CliError> {
    parts
        .get(i)
        .ok_or_else(|| CliError::flag("init", format!("missing {what}")))?
        .parse()
        .map_err(|_| CliError::flag("init", format!("cannot parse {what} from `{}`", parts[i])))
}

impl Init {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let parts: Vec<&str> = text.split(':').collect();
        match parts[0] {
            "delta" if parts.len() == 2 => Ok(Init::Delta(field(&parts, 1, "site")?)),
            "gaussian" if parts.len() == 3 || parts.len() == 4 => Ok(Init::Gaussian {
                center: field(&parts, 1, "center")?,
                sigma: field(&parts, 2, "sigma")?,
                k0: if parts.len() == 4 { field(&parts, 3, "k0")? } else { 0.0 },
            }),
            "plane" if parts.len() == 2 => Ok(Init::Plane(field(&parts, 1, "mode")?)),
            _ => Err(CliError::flag(
                "init",
                format!("`{text}` is not delta:SITE, gaussian:CENTER:SIGMA[:K0] or plane:MODE"),
            )),
        }
    }

    pub fn build<T: Real>(&self, grid: usize, params: DiracParams<T>) -> Result<WalkField<T>, CliError> {
        match *self {
            Init::Delta(site) => Ok(WalkField::delta(grid, site)?),
            Init::Gaussian { center, sigma, k0 } => Ok(WalkField::gaussian(grid, T::lit(center), T::lit(sigma), T::lit(k0))?),
            Init::Plane(mode) => {
                let k = commensurate_momentum(mode, grid, params.epsilon);
                Ok(dirac_plane_wave(k, params, T::zero(), grid)?)
            }
        }
    }
}

fn validate(args: &WalkArgs) -> Result<Init, CliError> {
    if args.grid < 2 {
        return Err(CliError::flag("grid", "must be at least 2"));
    }
    if args.engine == Engine::Pqca && !args.grid.is_multiple_of(2) {
        return Err(CliError::flag("grid", format!("must be even for the pqca engine (got {})", args.grid)));
    }
    if !(args.epsilon.is_finite() && args.epsilon > 0.0) {
        return Err(CliError::flag("epsilon", "must be finite and positive"));
    }
    if !(args.mass.is_finite() && args.mass >= 0.0) {
        return Err(CliError::flag("mass", "must be finite and non-negative"));
    }
    let init = Init::parse(&args.init)?;
    match init {
        Init::Delta(site) if site >= args.grid => {
            return Err(CliError::flag("init", format!("site {site} outside grid of {}", args.grid)));
        }
        Init::Gaussian { sigma, .. } if !(sigma > 0.0) => {
            return Err(CliError::flag("init", "gaussian sigma must be positive"));
        }
        _ => {}
    }
    Ok(init)
}

fn emit<T: Real>(csv: &mut Csv, t: usize, f: &WalkField<T>) {
    for x in 0..f.grid() {
        let (p, m) = (f.psi_plus()[x], f.psi_minus()[x]);
        csv.row(&[
            t.to_string(),
            x.to_string(),
            num(p.re.to_f64_lossy()),
            num(p.im.to_f64_lossy()),
            num(m.re.to_f64_lossy()),
            num(m.im.to_f64_lossy()),
            num(f.probability(x).to_f64_lossy()),
        ]);
    }
}

pub fn run<T: Real>(args: &WalkArgs) -> Result<Report, CliError> {
    let init = validate(args)?;
    let params = DiracParams::new(T::lit(args.mass), T::lit(args.epsilon))?;
    let start = init.build(args.grid, params)?;
    let mut csv = Csv::new(&["t", "x", "re_plus", "im_plus", "re_minus", "im_minus", "prob"]);
    emit(&mut csv, 0, &start);
    let last = match args.engine {
        Engine::Walk => {
            let mut f = start.clone();
            for t in 1..=args.steps {
                f = walk_step(&f, params);
                emit(&mut csv, t, &f);
            }
            f
        }
        Engine::Pqca => {
            let mut engine = EngineWalk::new(params, &start)?;
            let mut f = start.clone();
            for t in 1..=args.steps {
                engine.step()?;
                f = engine.field()?;
                emit(&mut csv, t, &f);
            }
            f
        }
    };
    let drift = (last.norm_sqr() - start.norm_sqr()).abs().to_f64_lossy();
    let mut report = Report::new(csv.finish(), Outcome::Pass).note(format!("norm drift {drift:e} after {} steps", args.steps));
    if let Some(path) = &args.dump_state {
        report.files.push((path.clone(), last.to_sparse().dump()));
    }
    Ok(report)
}
