use etk::oracle::{oracle_ground_energy, GaussianBasisConfig};
use etk::solver::solve_compact;
use etk::{Potential, SystemSpec};
use std::time::Instant;

fn main() {
    for (name, pot) in [
        ("harmonic", Potential::power(1.0, 2.0).unwrap()),
        ("coulomb", Potential::power(1.0, -1.0).unwrap()),
        ("npp-1.5", Potential::power(1.0, -1.5).unwrap()),
        ("tcoulomb d=3", Potential::trunc_coulomb(1.0, 3.0).unwrap()),
        ("exciton d=0.5", Potential::exciton(1.0, 0.5).unwrap()),
        ("linear", Potential::linear(1.0).unwrap()),
        ("cubic", Potential::cubic(1.0).unwrap()),
        ("log", Potential::log(1.0).unwrap()),
        ("gauss10", Potential::gauss(10.0).unwrap()),
    ] {
        let spec = SystemSpec::three_bosons(1.0, pot).unwrap();
        let rho0 = solve_compact(&spec, 2.0).unwrap().rho0;
        let cfg = GaussianBasisConfig::default().scaled_to(rho0);
        let t = Instant::now();
        match oracle_ground_energy(&spec, &cfg) {
            Ok(r) => println!(
                "{name:14} rho0={rho0:8.4}  E={:+.10}  conv={} kept={} stages={:?}  [{:.2}s]",
                r.energy, r.converged, r.basis_size,
                r.stage_energies.iter().map(|e| format!("{e:+.9}")).collect::<Vec<_>>(),
                t.elapsed().as_secs_f64()
            ),
            Err(e) => println!("{name:14} rho0={rho0:8.4}  ERROR {e}"),
        }
    }
}
