import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from configs import PointConfig, validated
from crossing import Bipartition, CrossingReport, crossing_pairs_among, hyperedge_pairs
from exceptions import ParameterError, SizeError

logger = logging.getLogger("hypercross")


def _count_chunk(config: PointConfig, pairs: List[Bipartition]) -> List[Bipartition]:
    return crossing_pairs_among(config, pairs)


class CrossingService:
    def __init__(self, workers: int = 1):
        if workers < 1:
            raise ParameterError(f"worker count must be positive, got {workers}")
        self.workers = workers

    def _chunks(self, pairs: List[Bipartition], workers: int) -> List[List[Bipartition]]:
        size = -(-len(pairs) // workers) or 1
        return [pairs[i:i + size] for i in range(0, len(pairs), size)]

    async def count_all(
        self,
        config: PointConfig,
        hyperedge_size: Optional[int] = None,
        keep_witnesses: bool = True,
        workers: Optional[int] = None,
    ) -> CrossingReport:
        size = config.dim if hyperedge_size is None else hyperedge_size
        if config.n < 2 * size:
            raise SizeError(f"{config.n} points cannot host two disjoint hyperedges of size {size}")
        config = validated(config)
        pairs = hyperedge_pairs(config.n, size)
        workers = self.workers if workers is None else workers
        if workers < 1:
            raise ParameterError(f"worker count must be positive, got {workers}")
        logger.info(f"🔍 Checking {len(pairs)} hyperedge pairs on {config.n} points in R^{config.dim} ({workers} workers)")

        if workers == 1 or len(pairs) < 2:
            crossing = _count_chunk(config, pairs)
        else:
            loop = asyncio.get_running_loop()
            with ProcessPoolExecutor(max_workers=workers) as executor:
                tasks = [
                    loop.run_in_executor(executor, _count_chunk, config, chunk)
                    for chunk in self._chunks(pairs, workers)
                ]
                results = await asyncio.gather(*tasks, return_exceptions=True)
            crossing = []
            for result in results:
                if isinstance(result, Exception):
                    logger.error(f"❌ Worker failed: {result}")
                    raise result
                crossing.extend(result)
            crossing.sort(key=Bipartition.sort_key)

        logger.info(f"✅ {len(crossing)} of {len(pairs)} pairs cross")
        return CrossingReport(
            config=config,
            hyperedge_size=size,
            total_pairs=len(pairs),
            crossing_count=len(crossing),
            witnesses=crossing if keep_witnesses else None,
        )

    def count(self, config: PointConfig, **kwargs) -> CrossingReport:
        return asyncio.run(self.count_all(config, **kwargs))
