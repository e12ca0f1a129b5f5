//! Trajectory CSV.
//!
//! Columns: `t`, then `psi_re_a`, `psi_im_a` for each level `a` (1-based),
//! then `G_re_a_b`, `G_im_a_b` over the upper triangle `a ≤ b`, then
//! `energy`, `theta1`, `herm_defect`, `G_min_eig`, `V_drift`, `W_drift`.
//! The drifts are `‖V(t) − V(0)‖_∞` and `‖W(t) − W(0)‖_∞`.

use std::io::Write;

use dynprod_core::integrate::Sample;
use dynprod_core::Trajectory;

pub fn header(n: usize) -> Vec<String> {
    let mut h = vec!["t".to_string()];
    for a in 1..=n {
        h.push(format!("psi_re_{a}"));
        h.push(format!("psi_im_{a}"));
    }
    for a in 1..=n {
        for b in a..=n {
            h.push(format!("G_re_{a}_{b}"));
            h.push(format!("G_im_{a}_{b}"));
        }
    }
    for name in ["energy", "theta1", "herm_defect", "G_min_eig", "V_drift", "W_drift"] {
        h.push(name.to_string());
    }
    h
}

fn row(sample: &Sample, first: &Sample) -> Vec<f64> {
    let s = &sample.state;
    let n = s.psi.len();
    let mut r = vec![s.t];
    for z in s.psi.iter() {
        r.push(z.re);
        r.push(z.im);
    }
    for a in 0..n {
        for b in a..n {
            r.push(s.g[(a, b)].re);
            r.push(s.g[(a, b)].im);
        }
    }
    let q = &sample.charges;
    r.push(q.energy);
    r.push(s.psi.dot(&s.g.mul_vec(&s.psi)).re);
    r.push(sample.diagnostics.herm_defect);
    r.push(sample.diagnostics.g_min_eig);
    r.push((&q.v - &first.charges.v).max_abs());
    r.push((&q.w - &first.charges.w).max_abs());
    r
}

pub fn write_csv<W: Write>(out: W, traj: &Trajectory) -> csv::Result<()> {
    let first = traj.initial();
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(first.state.psi.len()))?;
    for sample in &traj.samples {
        w.write_record(row(sample, first).iter().map(f64::to_string))?;
    }
    w.flush()?;
    Ok(())
}
