use super::rules::SmoothingRule;
use crate::scalar::Real;

/// Collection probability of a leaf. Leaves that never occur in the
/// collection get `1 / (2 * total_terms)` so their log stays finite.
pub fn collection_probability<F: Real>(cf: u64, total_terms: u64) -> F {
    let total = F::from_count(total_terms);
    if cf == 0 {
        F::one() / (F::from_count(2) * total)
    } else {
        F::from_count(cf) / total
    }
}

/// Natural-log smoothed probability of one query leaf in one document.
///
/// Expects `total_terms > 0` and `tf <= doc_len`.
pub fn leaf_log_prob<F: Real>(tf: u64, doc_len: u64, cf: u64, total_terms: u64, rule: &SmoothingRule<F>) -> F {
    let p_c: F = collection_probability(cf, total_terms);
    let tf = F::from_count(tf);
    let len = F::from_count(doc_len);
    match *rule {
        SmoothingRule::Dirichlet { mu } => ((tf + mu * p_c) / (len + mu)).ln(),
        SmoothingRule::JelinekMercer { lambda } => {
            let p_d = if doc_len == 0 { F::zero() } else { tf / len };
            ((F::one() - lambda) * p_d + lambda * p_c).ln()
        }
    }
}
