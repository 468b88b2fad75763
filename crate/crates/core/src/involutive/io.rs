//! ι-complexes in the complex file format: a `flavor:` header plus `iota`,
//! `fiota` and `psi` blocks.

use crate::algebra::{PMat, Ring};
use crate::complex::io::{parse_document, print_block, print_complex, Entry};

use super::{Flavor, InvolutiveError, IotaComplex};

fn matrix(n: usize, entries: &[Entry]) -> PMat {
    let mut m = PMat::zeros(n, n);
    for &(x, y, mono) in entries {
        m.add_mono(x, y, mono);
    }
    m
}

/// Reads an ι-complex. Without a `flavor:` header, `F2U` files are
/// horizontal and `F2UV`/`R` files are full.
pub fn parse_iota(text: &str) -> Result<IotaComplex, InvolutiveError> {
    let doc = parse_document(text)?;
    let flavor = match &doc.flavor {
        Some(f) => f.parse()?,
        None if matches!(doc.complex.ring(), Ring::R | Ring::F2UV) => Flavor::FullUV,
        None => Flavor::Horizontal,
    };
    let n = doc.complex.len();
    let mut x = IotaComplex::new(doc.complex, flavor, matrix(n, &doc.iota))?;
    if !doc.full_iota.is_empty() {
        x = x.with_full_iota(matrix(n, &doc.full_iota))?;
    }
    if !doc.psi.is_empty() {
        x = x.with_psi_lift(matrix(n, &doc.psi))?;
    }
    Ok(x)
}

pub fn print_iota(x: &IotaComplex) -> String {
    let mut s = print_complex(&x.complex);
    s.push_str(&format!("flavor: {}\n", x.flavor));
    match &x.full_iota {
        Some(f) => s.push_str(&print_block(&x.complex, "fiota", &f.matrix, true)),
        None => s.push_str(&print_block(&x.complex, "iota", &x.iota.matrix, false)),
    }
    if let Some(p) = &x.psi_lift {
        s.push_str(&print_block(&x.complex, "psi", &p.matrix, true));
    }
    s
}
