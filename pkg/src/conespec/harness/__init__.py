"""CLI, file formats, instance generators and verification suites."""

from .generate import KINDS, Instance, InstanceSpec, generate, write_instance
from .suites import SCHEMA_VERSION, SUITES, CheckResult, InstanceResult, VerificationReport, run_suite

__all__ = [
    "CheckResult", "Instance", "InstanceResult", "InstanceSpec", "KINDS", "SCHEMA_VERSION", "SUITES",
    "VerificationReport", "generate", "run_suite", "write_instance",
]
