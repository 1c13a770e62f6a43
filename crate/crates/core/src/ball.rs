//! Limited-magnitude error balls `B(n,t,k+,k-)`: integer vectors of length
//! `n` with at most `t` nonzero entries, each in `[-k-, k+]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorBall {
    pub n: usize,
    pub t: usize,
    pub k_plus: i64,
    pub k_minus: i64,
    /// Lexicographically sorted, pairwise distinct.
    pub vectors: Vec<Vec<i64>>,
}

impl ErrorBall {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.vectors
            .binary_search_by(|probe| probe.as_slice().cmp(v))
            .is_ok()
    }
}

fn validate(n: usize, t: usize, k_plus: i64, k_minus: i64) -> Result<()> {
    if t > n {
        return Err(Error::InvalidBall(format!("t = {t} exceeds n = {n}")));
    }
    if k_minus < 0 || k_plus < k_minus {
        return Err(Error::InvalidBall(format!(
            "need k_plus >= k_minus >= 0, got k_plus = {k_plus}, k_minus = {k_minus}"
        )));
    }
    if t >= 1 && k_plus < 1 {
        return Err(Error::InvalidBall(
            "k_plus must be at least 1 when t >= 1".into(),
        ));
    }
    Ok(())
}

/// Enumerates the ball in lexicographic order.
pub fn generate_ball(n: usize, t: usize, k_plus: i64, k_minus: i64) -> Result<ErrorBall> {
    validate(n, t, k_plus, k_minus)?;

    fn fill(
        pos: usize,
        weight_left: usize,
        k_plus: i64,
        k_minus: i64,
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == current.len() {
            out.push(current.clone());
            return;
        }
        for value in -k_minus..=k_plus {
            if value != 0 && weight_left == 0 {
                continue;
            }
            current[pos] = value;
            let left = if value == 0 {
                weight_left
            } else {
                weight_left - 1
            };
            fill(pos + 1, left, k_plus, k_minus, current, out);
        }
        current[pos] = 0;
    }

    let mut vectors = Vec::new();
    fill(0, t, k_plus, k_minus, &mut vec![0; n], &mut vectors);
    Ok(ErrorBall {
        n,
        t,
        k_plus,
        k_minus,
        vectors,
    })
}

/// `sum_{i=0..t} C(n,i) (k+ + k-)^i`.
pub fn ball_size(n: usize, t: usize, k_plus: i64, k_minus: i64) -> Result<u128> {
    validate(n, t, k_plus, k_minus)?;
    let k = (k_plus + k_minus) as u128;
    let overflow = || Error::InvalidBall("ball size overflows u128".into());
    let mut total = 0u128;
    let mut binom = 1u128;
    let mut kpow = 1u128;
    for i in 0..=t {
        if i > 0 {
            binom = binom
                .checked_mul((n - i + 1) as u128)
                .ok_or_else(overflow)?
                / i as u128;
            kpow = kpow.checked_mul(k).ok_or_else(overflow)?;
        }
        total = binom
            .checked_mul(kpow)
            .and_then(|x| total.checked_add(x))
            .ok_or_else(overflow)?;
    }
    Ok(total)
}
