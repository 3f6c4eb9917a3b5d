import logging

import uvicorn

from api_backend import app
from constants import settings

logger = logging.getLogger("hypercross")


def main():
    logger.info(f"🔑 Starting API service on {settings.api_host}:{settings.api_port}")
    uvicorn.run(app, host=settings.api_host, port=settings.api_port, log_level=settings.log_level.lower())


if __name__ == "__main__":
    main()
