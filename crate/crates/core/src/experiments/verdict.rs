use serde::Serialize;

use super::sweep::LambdaOutcome;

/// Column order of the summary table.
pub const SUMMARY_HEADER: &str = "lambda,I_u,I_w,rho,sigma,norm_u,norm_w,loc_max_u,loc_max_w,a,conc_u,conc_w,linf_u,linf_w,dist_limit_u,solves_u,solves_w,converged_u,converged_w";

/// One summary row. Quantities of a failed solve are `NaN`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LambdaRecord {
    pub lambda: f64,
    #[serde(rename = "I_u")]
    pub i_u: f64,
    #[serde(rename = "I_w")]
    pub i_w: f64,
    pub rho: f64,
    pub sigma: f64,
    pub norm_u: f64,
    pub norm_w: f64,
    pub loc_max_u: f64,
    pub loc_max_w: f64,
    pub a: f64,
    pub conc_u: f64,
    pub conc_w: f64,
    pub linf_u: f64,
    pub linf_w: f64,
    pub dist_limit_u: f64,
    /// `u_λ ≤ a` on `Ω^c`, so `u_λ` solves the unpenalized problem.
    pub solves_u: bool,
    pub solves_w: bool,
    pub converged_u: bool,
    pub converged_w: bool,
}

impl LambdaRecord {
    pub fn from_outcome(o: &LambdaOutcome, a: f64, rho: f64) -> Self {
        let nan = f64::NAN;
        let u = o.u.as_ref();
        let w = o.w.as_ref();
        let converged_u = o.converged_u();
        let converged_w = o.converged_w();
        let loc_max_u = u.map_or(nan, |r| r.localization_max);
        let loc_max_w = w.map_or(nan, |r| r.solve.localization_max);
        Self {
            lambda: o.lambda,
            i_u: u.map_or(nan, |r| r.energy),
            i_w: w.map_or(nan, |r| r.c_lambda),
            rho,
            sigma: w.map_or(nan, |r| r.sigma_bound),
            norm_u: u.map_or(nan, |r| r.lambda_norm),
            norm_w: w.map_or(nan, |r| r.solve.lambda_norm),
            loc_max_u,
            loc_max_w,
            a,
            conc_u: u.map_or(nan, |r| r.concentration),
            conc_w: w.map_or(nan, |r| r.solve.concentration),
            linf_u: u.map_or(nan, |r| r.linf_off_o),
            linf_w: w.map_or(nan, |r| r.solve.linf_off_o),
            dist_limit_u: o.dist_limit_u,
            solves_u: converged_u && loc_max_u <= a,
            solves_w: converged_w && loc_max_w <= a,
            converged_u,
            converged_w,
        }
    }

    /// The row in summary-table form, floats in shortest round-trip notation.
    pub fn csv_line(&self) -> String {
        let f = [
            self.lambda,
            self.i_u,
            self.i_w,
            self.rho,
            self.sigma,
            self.norm_u,
            self.norm_w,
            self.loc_max_u,
            self.loc_max_w,
            self.a,
            self.conc_u,
            self.conc_w,
            self.linf_u,
            self.linf_w,
            self.dist_limit_u,
        ];
        let mut cells: Vec<String> = f.iter().map(|v| format!("{v}")).collect();
        for b in [self.solves_u, self.solves_w, self.converged_u, self.converged_w] {
            cells.push(b.to_string());
        }
        cells.join(",")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LambdaBracket {
    /// Largest sweep value below the detected threshold, if any.
    pub lower: Option<f64>,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremVerdict {
    pub records: Vec<LambdaRecord>,
    pub all_converged: bool,
    /// Smallest sweep value from which both solutions solve the original problem at every larger sweep value.
    pub lambda_star_detected: Option<f64>,
    pub lambda_star_bracket: Option<LambdaBracket>,
    pub limit_energy: Option<f64>,
    pub limit_converged: bool,
}

impl TheoremVerdict {
    pub fn new(records: Vec<LambdaRecord>, limit_energy: Option<f64>, limit_converged: bool) -> Self {
        let all_converged = records.iter().all(|r| r.converged_u && r.converged_w);
        let (star, bracket) = detect_lambda_star(&records);
        Self {
            records,
            all_converged,
            lambda_star_detected: star,
            lambda_star_bracket: bracket,
            limit_energy,
            limit_converged,
        }
    }
}

fn detect_lambda_star(records: &[LambdaRecord]) -> (Option<f64>, Option<LambdaBracket>) {
    let ok = |r: &LambdaRecord| r.solves_u && r.solves_w;
    let mut first = records.len();
    while first > 0 && ok(&records[first - 1]) {
        first -= 1;
    }
    if first == records.len() {
        return (None, None);
    }
    let upper = records[first].lambda;
    let lower = first.checked_sub(1).map(|i| records[i].lambda);
    (Some(upper), Some(LambdaBracket { lower, upper }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(lambda: f64, su: bool, sw: bool) -> LambdaRecord {
        LambdaRecord {
            lambda,
            i_u: 0.0,
            i_w: 1.0,
            rho: 0.1,
            sigma: 2.0,
            norm_u: 0.1,
            norm_w: 0.5,
            loc_max_u: 0.0,
            loc_max_w: 0.0,
            a: 0.5,
            conc_u: 0.0,
            conc_w: 0.0,
            linf_u: 0.0,
            linf_w: 0.0,
            dist_limit_u: 0.0,
            solves_u: su,
            solves_w: sw,
            converged_u: true,
            converged_w: true,
        }
    }

    #[test]
    fn star_is_start_of_final_run() {
        let r = vec![
            rec(1.0, true, true),
            rec(2.0, true, false),
            rec(3.0, true, true),
            rec(4.0, true, true),
        ];
        let (s, b) = detect_lambda_star(&r);
        assert_eq!(s, Some(3.0));
        assert_eq!(b.unwrap().lower, Some(2.0));
    }

    #[test]
    fn star_at_first_value_has_open_bracket() {
        let r = vec![rec(1.0, true, true), rec(2.0, true, true)];
        let (s, b) = detect_lambda_star(&r);
        assert_eq!(s, Some(1.0));
        assert_eq!(b.unwrap().lower, None);
    }

    #[test]
    fn no_star_when_last_fails() {
        let r = vec![rec(1.0, true, true), rec(2.0, false, true)];
        assert_eq!(detect_lambda_star(&r), (None, None));
    }

    #[test]
    fn csv_line_matches_header_arity() {
        let line = rec(1.0, true, false).csv_line();
        assert_eq!(line.split(',').count(), SUMMARY_HEADER.split(',').count());
        assert!(line.ends_with("true,false,true,true"));
    }
}
