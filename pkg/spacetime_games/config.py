import logging
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file if it exists
env_path = Path(__file__).parent.parent / ".env"
if env_path.exists():
    load_dotenv(env_path)


def _env_bool(name: str, default: str = "0") -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Config:
    def __init__(self):
        # Geometry
        self.light_speed: float = float(os.getenv("SPACETIME_LIGHT_SPEED", "1.0"))

        # Strategic form
        self.max_tensor_cells: int = int(os.getenv("SPACETIME_MAX_TENSOR_CELLS", "10000000"))

        # Extensive form
        self.linearization_cap: int = int(os.getenv("SPACETIME_LINEARIZATION_CAP", "50"))
        self.interpret_budget: int = int(os.getenv("SPACETIME_INTERPRET_BUDGET", "1000"))

        # Validation
        self.allow_spacelike_agent: bool = _env_bool("SPACETIME_ALLOW_SPACELIKE_AGENT")

        # Logging
        self.log_level: str = os.getenv("SPACETIME_LOG_LEVEL", "WARNING").upper()

    def validate(self) -> bool:
        """Validate that all configuration values are usable."""
        if not self.light_speed > 0:
            raise ValueError("SPACETIME_LIGHT_SPEED must be positive")
        if self.max_tensor_cells < 1:
            raise ValueError("SPACETIME_MAX_TENSOR_CELLS must be at least 1")
        if self.linearization_cap < 1:
            raise ValueError("SPACETIME_LINEARIZATION_CAP must be at least 1")
        if self.interpret_budget < 1:
            raise ValueError("SPACETIME_INTERPRET_BUDGET must be at least 1")
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ValueError(f"SPACETIME_LOG_LEVEL '{self.log_level}' is not a logging level")
        return True


# Create a global config instance
config = Config()
