//! Kinematic analysis and dexterity-driven geometric synthesis of
//! Orthoglide-type translational parallel manipulators.
//!
//! The crate is organised bottom-up:
//!
//! * [`kinematics`]: inverse/direct position problems, the inverse Jacobian and
//!   workspace classification;
//! * [`qaxis`]: closed-form dexterity along the first-octant bisector;
//! * [`dexterity`]: dexterity criteria and factor ranges;
//! * [`critical`]: critical points of the joint-bounded workspace and the
//!   global transmission-factor bounds derived from them;
//! * [`synthesis`]: the three design strategies and physical scaling;
//! * [`explorer`]: numerical oracles (SVD scans, volume estimation, encoder
//!   offset sensitivity).
//!
//! All routines are generic over [`Real`] (`f32` or `f64`). Most analysis is
//! carried out on the normalized manipulator with unit link length.

pub mod critical;
pub mod dexterity;
pub mod error;
pub mod explorer;
pub mod kinematics;
pub mod linalg;
pub mod qaxis;
pub mod roots;
pub mod scalar;
pub mod synthesis;

pub use critical::{
    critical_region_boundaries, global_mu_max, global_mu_min, joint_limits_for_bounds, joint_limits_symmetric,
    phi_qq, phi_rq, q_vertex, r_edge, s_face, CriticalKind, CriticalPoint, GlobalBound, JointLimitPair,
    RegionConstants,
};
pub use dexterity::{DexterityBound, FactorRange};
pub use error::{Error, Result};
pub use kinematics::{
    branch_index, classify_cartesian_point, direct_kinematics, inverse_jacobian, inverse_jacobian_det,
    inverse_kinematics, joint_space_feasible, CartesianPoint, ConfigIndices, Geometry, JointVector, PointClass, Sign,
};
pub use linalg::Mat3;
pub use qaxis::{ChiRange, QAxisPoint};
pub use scalar::Real;
pub use synthesis::{DesignResult, DesignSpec, JointFactorRange, LengthUnit, Strategy};

pub type PointF64 = CartesianPoint<f64>;
pub type PointF32 = CartesianPoint<f32>;
pub type JointsF64 = JointVector<f64>;
pub type JointsF32 = JointVector<f32>;
pub type GeometryF64 = Geometry<f64>;
pub type GeometryF32 = Geometry<f32>;
pub type Mat3F64 = Mat3<f64>;
pub type Mat3F32 = Mat3<f32>;
pub type ChiRangeF64 = ChiRange<f64>;
pub type QAxisPointF64 = QAxisPoint<f64>;
pub type BoundF64 = DexterityBound<f64>;
pub type BoundF32 = DexterityBound<f32>;
pub type FactorRangeF64 = FactorRange<f64>;
pub type FactorRangeF32 = FactorRange<f32>;
pub type LimitsF64 = JointLimitPair<f64>;
pub type LimitsF32 = JointLimitPair<f32>;
pub type CriticalPointF64 = CriticalPoint<f64>;
pub type DesignResultF64 = DesignResult<f64>;
pub type DesignResultF32 = DesignResult<f32>;
pub type DesignSpecF64 = DesignSpec<f64>;
