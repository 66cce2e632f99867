//! The four published test cases.

use crate::analytics::bubble_column_velocity;
use crate::config::{BulkStrategy, DragModel, RampBounds, ScenarioConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TestId {
    Test1,
    Test2,
    Test3,
    Test4,
}

impl TestId {
    pub const ALL: [TestId; 4] = [TestId::Test1, TestId::Test2, TestId::Test3, TestId::Test4];

    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            1 => Some(TestId::Test1),
            2 => Some(TestId::Test2),
            3 => Some(TestId::Test3),
            4 => Some(TestId::Test4),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            TestId::Test1 => 1,
            TestId::Test2 => 2,
            TestId::Test3 => 3,
            TestId::Test4 => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestPreset {
    pub id: TestId,
    pub config: ScenarioConfig,
}

/// Gas inlet velocity that balances buoyancy and drag at the minimum gas fraction.
fn bubble_column_min(c: &ScenarioConfig) -> f64 {
    let k_i = match c.drag {
        DragModel::Constant { k_i, .. } => k_i,
        DragModel::Cgw { .. } => unreachable!("constant-drag presets only"),
    };
    bubble_column_velocity(c.alpha_g.min, c.density_ratio(), c.g_hat, k_i)
}

pub fn preset(id: TestId) -> TestPreset {
    let mut c = ScenarioConfig {
        nx: 200,
        nt: 6_000_000,
        n_ramp: 500_000,
        rho_g0: 1.2,
        rho_l0: 2.4,
        nu_g: 1.1667,
        nu_l: 1.1667,
        g_hat: 1e-6,
        drag: DragModel::Constant { k_i: 1e-2, k_w: 1e-2 },
        gamma: 0.0,
        n_gamma: 1,
        chi_alpha: 1.0,
        alpha_g: RampBounds::new(1e-2, 0.8),
        u_g: RampBounds::new(0.0, 1e-2),
        u_l: RampBounds::new(0.0, 1e-3),
        bulk_strategy: BulkStrategy::D1Smooth,
    };
    match id {
        TestId::Test1 => {}
        TestId::Test2 => {
            c.rho_l0 = 6.0;
            c.g_hat = 2.5e-7;
        }
        TestId::Test3 | TestId::Test4 => {
            c.rho_l0 = 1000.0;
            c.g_hat = 1.2e-9;
            c.gamma = 1.0;
            c.n_gamma = 200;
        }
    }
    if id == TestId::Test4 {
        c.drag = DragModel::Cgw { kappa_i: 1.45e-4, kappa_w: 1.45e-4 };
        c.u_g = RampBounds::new(0.0043 / 10.0, 0.0043);
        c.u_l = RampBounds::new(0.0011 / 10.0, 0.0011);
        c.alpha_g = RampBounds::new(1e-2, 0.1);
    } else {
        c.u_g.min = bubble_column_min(&c);
    }
    TestPreset { id, config: c }
}
