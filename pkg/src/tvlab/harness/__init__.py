from tvlab.harness.generators import (
    ColorfulParams,
    GeneratorError,
    HolmsenParams,
    MatroidFamilyParams,
    PiercedParams,
    generate_colorful_instance,
    generate_holmsen_instance,
    generate_kalai_meshulam_instance,
    generate_pierced_instance,
    planted_refutation_instance,
)
from tvlab.harness.serialize import InstanceSpec, SpecError, instances_equal
from tvlab.harness.suites import SUITES, RunReport, SuiteConfig, run_suite

__all__ = [
    "ColorfulParams",
    "GeneratorError",
    "HolmsenParams",
    "InstanceSpec",
    "MatroidFamilyParams",
    "PiercedParams",
    "RunReport",
    "SUITES",
    "SpecError",
    "SuiteConfig",
    "generate_colorful_instance",
    "generate_holmsen_instance",
    "generate_kalai_meshulam_instance",
    "generate_pierced_instance",
    "instances_equal",
    "planted_refutation_instance",
    "run_suite",
]
