//! Nonexistence gate for the general system: no pair of finite order
//! transcendental solutions exists when `n1 n2 > m1 m2`, or when
//! `n_j > m_j / (m_j - 1)` for both `j` with `m_j >= 2`. Decisions use
//! exact integer arithmetic; the ratio test is evaluated as
//! `n_j (m_j - 1) > m_j`.

use alloc::format;
use alloc::string::String;

use super::TheoremError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    NonexistentByProduct,
    NonexistentByRatio,
    Inconclusive,
}

impl GateKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GateKind::NonexistentByProduct => "NONEXISTENT_BY_PRODUCT",
            GateKind::NonexistentByRatio => "NONEXISTENT_BY_RATIO",
            GateKind::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GateVerdict {
    pub kind: GateKind,
    /// The triggering inequality, echoed exactly.
    pub detail: String,
}

pub fn gate_nonexistence(m1: u32, m2: u32, n1: u32, n2: u32) -> Result<GateVerdict, TheoremError> {
    if m1 == 0 || m2 == 0 || n1 == 0 || n2 == 0 {
        return Err(TheoremError::BadParams(
            "gate exponents must be positive integers".into(),
        ));
    }
    let (m1, m2, n1, n2) = (m1 as u64, m2 as u64, n1 as u64, n2 as u64);
    if n1 * n2 > m1 * m2 {
        return Ok(GateVerdict {
            kind: GateKind::NonexistentByProduct,
            detail: format!("n1*n2 = {} > {} = m1*m2", n1 * n2, m1 * m2),
        });
    }
    if m1 >= 2 && m2 >= 2 && n1 * (m1 - 1) > m1 && n2 * (m2 - 1) > m2 {
        return Ok(GateVerdict {
            kind: GateKind::NonexistentByRatio,
            detail: format!(
                "n1({}-1) = {} > {} and n2({}-1) = {} > {}",
                m1,
                n1 * (m1 - 1),
                m1,
                m2,
                n2 * (m2 - 1),
                m2
            ),
        });
    }
    Ok(GateVerdict {
        kind: GateKind::Inconclusive,
        detail: format!(
            "n1*n2 = {} <= {} = m1*m2 and the ratio condition fails",
            n1 * n2,
            m1 * m2
        ),
    })
}
