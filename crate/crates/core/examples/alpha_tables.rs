//! The two 256-entry tables behind multiplication and division by alpha in
//! GF(2^32), and a few identities they satisfy.

use sosemanuk::gf::{div_alpha, gf8_beta_pow, mul_alpha, p_coefficients, Gf32};
use sosemanuk::AlphaTables;

fn main() {
    let t = AlphaTables::get();
    let p = p_coefficients();
    println!(
        "P(X) = X^4 + {:02x} X^3 + {:02x} X^2 + {:02x} X + {:02x}",
        p[3].0, p[2].0, p[1].0, p[0].0
    );
    println!("beta^8 = {:02x}", gf8_beta_pow(8).unwrap().0);
    for b in [1usize, 2, 0x80, 0xFF] {
        println!("mul_mask[{b:02x}] = {:08x}  div_mask[{b:02x}] = {:08x}", t.mul_mask[b], t.div_mask[b]);
    }

    let z = 0xDEAD_BEEF;
    let up = mul_alpha(z, t);
    println!("alpha * {z:08x} = {up:08x}, divided back = {:08x}", div_alpha(up, t));
    assert_eq!(up, Gf32(z).mul_alpha().0);
}
