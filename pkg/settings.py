import os

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict

load_dotenv()


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True)

    workers: int = 1
    retry_budget: int = 1000
    box_factor: int = 4
    log_level: str = "INFO"
    api_host: str = "0.0.0.0"
    api_port: int = 8000


def get_settings() -> Settings:
    return Settings(
        workers=int(os.getenv("HYPERCROSS_WORKERS", "1")),
        retry_budget=int(os.getenv("HYPERCROSS_RETRY_BUDGET", "1000")),
        box_factor=int(os.getenv("HYPERCROSS_BOX_FACTOR", "4")),
        log_level=os.getenv("HYPERCROSS_LOG_LEVEL", "INFO"),
        api_host=os.getenv("HYPERCROSS_API_HOST", "0.0.0.0"),
        api_port=int(os.getenv("HYPERCROSS_API_PORT", "8000")),
    )
