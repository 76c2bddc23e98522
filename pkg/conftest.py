# Global pytest configuration
import os

# Environment variables the tests need, set BEFORE any import
os.environ.setdefault("ENVIRONMENT", "test")
os.environ.setdefault("APP_NAME", "Test Patchwork")
os.environ.setdefault("PATCHWORK_RANDOM_SEED", "2024")
os.environ.setdefault("PATCHWORK_THREADS", "2")
