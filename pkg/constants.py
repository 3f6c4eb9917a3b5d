import logging

from rich.console import Console
from rich.logging import RichHandler

from crossing_service import CrossingService
from file_manager import FileManager
from search_service import SearchService
from settings import get_settings
from verification_service import VerificationService

settings = get_settings()

logging.basicConfig(
    level=settings.log_level,
    format="%(message)s",
    handlers=[RichHandler(console=Console(stderr=True), show_path=False)],
)

# Global instances
crossing_service = CrossingService(workers=settings.workers)
search_service = SearchService()
verification_service = VerificationService(crossing_service)
file_manager = FileManager()
