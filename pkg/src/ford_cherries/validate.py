"""Hydra entry point that runs the validation harness and writes its JSON report."""

from pathlib import Path

import hydra
from hydra.utils import instantiate
from loguru import logger
from omegaconf import DictConfig, OmegaConf

from ford_cherries.io import dump_json

config_path = str(Path(__file__).resolve().parent.parent.parent / "configs")


@hydra.main(config_path=config_path, config_name="validate_config", version_base="1.2")
def validate(cfg: DictConfig) -> bool:
    logger.info(f"validation config:\n{OmegaConf.to_yaml(cfg)}")

    # 1. Instantiate the harness
    harness = instantiate(cfg.harness)

    # 2. Run the selected checks
    checks = list(cfg.checks) if cfg.get("checks") else None
    report = harness.run(checks)

    # 3. Write the report
    report_file = Path(cfg.report_file)
    report_file.parent.mkdir(parents=True, exist_ok=True)
    dump_json(report, report_file)
    logger.info(f"report written to {report_file}")

    if not report.passed:
        logger.error(f"failed checks: {', '.join(report.failures())}")
    return report.passed


if __name__ == "__main__":
    validate()
