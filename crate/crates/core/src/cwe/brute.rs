use std::collections::HashMap;

use crate::code::{Code, CodeSpec, Composition};
use crate::error::Result;

use super::CwePolynomial;

/// The CWE by enumerating the codeword of every b in F_q, b = 0 included.
pub fn cwe_brute(spec: &CodeSpec) -> Result<CwePolynomial> {
    let code = Code::new(spec.clone())?;
    cwe_of_code(&code)
}

pub(crate) fn cwe_of_code(code: &Code) -> Result<CwePolynomial> {
    let words = code.trace_words();
    let counts = words.fold_all(
        HashMap::<Vec<u64>, u64>::new,
        |acc, _, hist| match acc.get_mut(hist) {
            Some(f) => *f += 1,
            None => {
                acc.insert(hist.to_vec(), 1);
            }
        },
        |mut left, right| {
            for (k, v) in right {
                *left.entry(k).or_insert(0) += v;
            }
            left
        },
    );
    let mut cwe = CwePolynomial::new(code.len() as u64);
    for (composition, frequency) in counts {
        cwe.add(Composition(composition), frequency)?;
    }
    Ok(cwe)
}
