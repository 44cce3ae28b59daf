"""
FastAPI Server Runner
Starts the REST API server for qrtrap
"""
import logging

import uvicorn

from src.utils.config import APIConfig, configure_logging

logger = logging.getLogger(__name__)


def main() -> None:
    configure_logging()
    logger.info(f"Starting qrtrap FastAPI server on {APIConfig.HOST}:{APIConfig.PORT}...")
    uvicorn.run(
        "src.api.main:app",
        host=APIConfig.HOST,
        port=APIConfig.PORT,
        log_level="info"
    )


if __name__ == "__main__":
    main()
