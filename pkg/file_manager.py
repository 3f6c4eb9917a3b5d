import json
import logging
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from configs import PointConfig
from crossing import Bipartition, CrossingReport
from exceptions import ParameterError
from moment import BoundRow
from search_service import SearchResult
from separations import Separation

logger = logging.getLogger("hypercross")


def _joined(indices) -> str:
    return " ".join(str(i + 1) for i in indices)


class FileManager:
    """Reads point configurations and renders reports as JSON or CSV text (1-based indices)."""

    def load_config(self, path: Path) -> PointConfig:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ParameterError(f"cannot read configuration {path}: {e}") from e
        try:
            config = PointConfig.from_json(text)
        except ValidationError as e:
            raise ParameterError(f"{path} is not a point configuration: {e.errors()[0]['msg']}") from e
        logger.info(f"📂 Loaded {config.n} points in R^{config.dim} from {path}")
        return config

    def save_config(self, config: PointConfig, path: Path) -> None:
        self.write(self.render_json(json.loads(config.to_json())), path)

    def render_json(self, payload) -> str:
        return json.dumps(payload, indent=2) + "\n"

    def render_csv(self, frame: pd.DataFrame) -> str:
        return frame.to_csv(index=False, lineterminator="\n")

    def bounds_frame(self, rows: List[BoundRow]) -> pd.DataFrame:
        columns = ["d", "cdm", "thm1", "lemma8", "binom_2d_d", "thm1_degenerate", "lemma8_degenerate"]
        return pd.DataFrame([row.model_dump() for row in rows], columns=columns)

    def witnesses_frame(self, pairs: List[Bipartition]) -> pd.DataFrame:
        return pd.DataFrame(
            [{"left": _joined(p.left), "right": _joined(p.right)} for p in pairs],
            columns=["left", "right"],
        )

    def report_frame(self, report: CrossingReport) -> pd.DataFrame:
        if report.witnesses is not None:
            return self.witnesses_frame(report.witnesses)
        summary = report.to_external()
        return pd.DataFrame([summary], columns=["dim", "n", "hyperedge_size", "total_pairs", "crossing_count"])

    def separations_frame(self, separations: List[Separation]) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "positive_side": _joined(s.positive_side),
                    "negative_side": _joined(s.negative_side),
                    "boundary": " ".join(str(x) for x in s.boundary),
                    "proper": s.is_proper,
                }
                for s in separations
            ],
            columns=["positive_side", "negative_side", "boundary", "proper"],
        )

    def search_frame(self, result: SearchResult) -> pd.DataFrame:
        return pd.DataFrame(
            [{"trial": t + 1, "crossing_count": c} for t, c in result.improvements],
            columns=["trial", "crossing_count"],
        )

    def write(self, text: str, path: Optional[Path]) -> Optional[str]:
        """Writes `text` to `path`; without a path the text is handed back for stdout."""
        if path is None:
            return text
        Path(path).write_text(text, encoding="utf-8")
        logger.info(f"💾 Wrote {path}")
        return None
