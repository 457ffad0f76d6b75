//! Closed forms shared by the integration tests. `E`, `K`, `P` are Ẽ, K̃, Π̃
//! (or their low-temperature counterparts for the `low` entries).

#![allow(dead_code)]

use ellcorr::ellring::{parse_value, Basis, EllValue};

pub fn val(src: &str) -> EllValue {
    parse_value(src, Basis::Pi).unwrap_or_else(|e| panic!("{src}: {e}"))
}

/// (M, N, C(M,N)) above the diagonal and on it.
pub const C_FORMS: [(usize, usize, &str); 5] = [
    (1, 1, "E/(s_h*s_v) + (s_h^2*s_v^2-1)/(s_h*s_v)*K"),
    (
        2,
        2,
        "(5-s_h^2*s_v^2)/(3*s_h^2*s_v^2)*E^2 + 8*(s_h^2*s_v^2-1)/(3*s_h^2*s_v^2)*E*K \
         + (s_h^2*s_v^2-1)^2/(s_h^2*s_v^2)*K^2",
    ),
    (0, 1, "u_v*((s_h^2+1)/s_h*P - K/s_h)"),
    (
        0,
        2,
        "(s_h^2*s_v^4+s_v^4+s_v^2+1)/s_h^2*K^2 - E^2/s_h^2 - 2*(s_v^2+1)^2*(s_h^2+1)/s_h^2*K*P \
         + (s_v^2+1)*(s_h^2+1)*(s_h^2+s_v^2+2)/s_h^2*P^2",
    ),
    (
        1,
        2,
        "u_v*(E^2/(s_h^2*s_v) - (s_h^2*s_v^2-1)/(s_h^2*s_v)*K^2 + (s_h^2*s_v^2+s_v^2-2)/(s_h^2*s_v)*E*K \
         - (s_h^2+1)*(s_v^2-1)/(s_h^2*s_v)*E*P + (s_h^2+1)*(s_h^2*s_v^2-1)/(s_h^2*s_v)*K*P)",
    ),
];

pub const C_DUAL_FORMS: [(usize, usize, &str); 5] = [
    (1, 1, "E"),
    (
        2,
        2,
        "(5*s_h^2*s_v^2-1)/(3*s_h^2*s_v^2)*E^2 + 2*(s_h^2*s_v^2-1)^2/(3*s_h^2*s_v^2)*E*K \
         - (s_h^2*s_v^2-1)^2/(3*s_h^2*s_v^2)*K^2",
    ),
    (0, 1, "u_h*((s_v^2+1)*P - s_v^2*K)"),
    (
        0,
        2,
        "(s_h^2*s_v^4+2*s_h^2*s_v^2+s_v^4+s_v^2-1)/s_h^2*K^2 - 2*(s_h^2*s_v^2-1)/s_h^2*E*K - E^2/s_h^2 \
         - 2*s_v^2*(s_h^2+1)^2*(s_v^2+1)/s_h^2*K*P + (s_v^2+1)*(s_h^2+1)*(s_h^2+s_v^2+2*s_h^2*s_v^2)/s_h^2*P^2",
    ),
    (
        1,
        2,
        "u_h*(s_v^2*(s_h^2*s_v^2-1)/s_h^2*K^2 + (s_v^2-1)/s_h^2*E*K + E^2/s_h^2 \
         + (s_h^2-1)*(s_v^2+1)/s_h^2*E*P - (s_v^2+1)*(s_h^2*s_v^2-1)/s_h^2*K*P)",
    ),
];

/// Low-temperature C_<(M,N), with the corrected K̃_<² coefficient for (0,2).
pub const C_LOW_FORMS: [(usize, usize, &str); 3] = [
    (1, 1, "E"),
    (0, 1, "u_v/s_v*((1+1/s_h^2)*P - K/s_h^2)"),
    (0, 2, LOW_02),
];

const LOW_02: &str = "(1+1/s_h^2)*(1+1/s_v^2)*(2/(s_v^2*s_h^2)+1/s_v^2+1/s_h^2)*s_v^2*P^2 \
     - 2/s_h^2*(1/s_h^2+1)*(1/s_v^2+1)^2*s_v^2*K*P - 2*(1/(s_v^2*s_h^2)-1)*s_v^2*E*K \
     + (1/(s_v^2*s_h^4)+2/(s_v^2*s_h^2)+1/s_h^4+1/s_h^2-1)*s_v^2*K^2 - s_v^2*E^2";

/// C_<(0,2) with the K̃_<² coefficient as printed.
pub const LOW_02_PRINTED: &str = "(1+1/s_h^2)*(1+1/s_v^2)*(2/(s_v^2*s_h^2)+1/s_v^2+1/s_h^2)*s_v^2*P^2 \
     - 2/s_h^2*(1/s_h^2+1)*(1/s_v^2+1)^2*s_v^2*K*P - 2*(1/(s_v^2*s_h^2)-1)*s_v^2*E*K \
     + (1/(s_v^2*s_h^2)+1/(s_v^2*s_h^2)+1/s_h^4+1/s_v^2-1)*s_v^2*K^2 - s_v^2*E^2";

/// Isotropic C(1,2), C_d(1,2) with the linear Ẽ terms as printed.
pub const ISO_12_PRINTED: &str = "u_h*((s_h^2+1)*(s_h^2-1)^2/(2*s_h^3)*K^2 + E^2/s_h^3 \
     + (s_h^2+3)*(s_h^2-1)/(2*s_h^3)*E*K + (s_h^2+1)*(s_h^2-1)/(2*s_h^3)*K - (s_h^2-1)/s_h^3*E)";
pub const ISO_D12_PRINTED: &str = "u_h*((s_h^2+1)*(s_h^2-1)^2/(2*s_h^2)*K^2 + E^2/s_h^2 \
     + (s_h^2+3)*(s_h^2-1)/(2*s_h^2)*E*K - (s_h^2+1)*(s_h^2-1)/(2*s_h^2)*K + (s_h^2-1)/s_h^2*E)";

/// Coefficients of λ⁰..λ⁶ in the expansion of Π̃(−s²λ², s²), s written as s_h.
pub const PI_SERIES: [(i32, &str); 4] = [
    (0, "K"),
    (2, "(E - K)/s_h^2"),
    (4, "((s_h^4+2)*K - 2*(s_h^4+1)*E)/(3*s_h^4)"),
    (6, "((8*s_h^8+7*s_h^4+8)*E - (4*s_h^8+3*s_h^4+8)*K)/(15*s_h^6)"),
];

pub const HIGH_POINTS: [(f64, f64); 3] = [(0.6, 0.8), (0.3, 1.2), (0.9, 0.5)];
pub const LOW_POINTS: [(f64, f64); 3] = [(1.3, 1.1), (2.0, 0.9), (1.5, 1.6)];
