"""Provides configuration settings for the application using Pydantic settings.

Attributes:
    app_settings: A configuration class that inherits from BaseSettings and
        includes the worker count, the monoid cache database, the corpus
        location and the size guards of the enumerations.

"""

from dotenv import load_dotenv
from pydantic_settings import BaseSettings

# Load environment variables from a .env file
load_dotenv()


class AppSettings(BaseSettings):
    """Represents a configuration object for the application."""

    THREAD_WORKS: int = 8
    ENUMERATION_DB_URL: str = "sqlite://"
    CORPUS_PATH: str = "corpus"
    DEFAULT_SEED: int = 20190513

    MAX_CONGRUENCE_ORDER: int = 12
    MAX_MONOID_ORDER: int = 5
    MAX_FACTORIAL_ARG: int = 12
    MAX_GROUP_WORD_LENGTH: int = 10_000_000

    LOG_LEVEL: str = "WARNING"

    class Config:
        """Represents a configuration object for the application.

        Attributes:
            env_file (str): The name of the environment file to use.
            Default is ".env".

        """

        env_file = ".env"
        env_file_encoding = "utf-8"
        case_sensitive = True


app_settings = AppSettings()
