use std::fmt::Write as _;

use qcalab::dirac::{dirac_scattering_unitary, DiracParams};
use qcalab::pqca::{check_quiescence, ScatteringUnitary, QUIESCENCE_TOL};
use qcalab::scalar::tol;
use qcalab::Real;

use crate::args::QuiescenceArgs;
use crate::error::{CliError, Outcome};
use crate::report::Report;

pub fn run<T: Real>(args: &QuiescenceArgs) -> Result<Report, CliError> {
    let (u, source) = match &args.unitary_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::flag("unitary-file", format!("cannot read {}: {e}", path.display())))?;
            (ScatteringUnitary::<T>::parse(&text)?, path.display().to_string())
        }
        None => {
            let params = DiracParams::new(T::lit(args.mass), T::lit(args.epsilon))?;
            (dirac_scattering_unitary(params), format!("dirac mass={} epsilon={}", args.mass, args.epsilon))
        }
    };
    let defect = check_quiescence(&u);
    let outcome = Outcome::from_bool(defect <= tol::<T>(QUIESCENCE_TOL));
    let mut out = String::new();
    let _ = writeln!(out, "quiescence source={source}");
    let _ = writeln!(out, "alphabet {} lattice_dim {}", u.alphabet().size(), u.lattice_dim());
    let _ = writeln!(out, "unitarity_defect {:e}", u.unitarity_defect().to_f64_lossy());
    let _ = writeln!(out, "quiescence_defect {:e}", defect.to_f64_lossy());
    let _ = writeln!(out, "verdict {}", outcome.label());
    Ok(Report::new(out, outcome))
}
