//! The delay monad on its own: guarded fixed points, extension and forcing.
//!
//! cargo run --example delay_monad

use fpc::kernel::{bottom, delta_n, eta, ext, force, gfix, step_l, Delay, Susp};

fn main() {
    let d = delta_n(3, eta("done"));
    println!("delta^3 (now done): {:?}", force(&d, 10));
    println!("with fuel 2:        {:?}", force(&d, 2));
    println!("bottom:             {:?}", force(&bottom::<()>(), 1_000));

    // a stream of delays counting down, tied with a guarded fixed point
    let countdown: Delay<u32> = gfix(|later: Susp<Delay<u32>>| step_l(later.map(|d| delta_n(2, d))));
    println!("guarded loop:       {:?}", force(&countdown, 50));

    // extending a function along delays keeps every step
    let double = ext(|x: u32| eta(x * 2), step_l);
    println!("double (delta^4 21): {:?}", force(&double.apply(delta_n(4, eta(21))), 10));
}
