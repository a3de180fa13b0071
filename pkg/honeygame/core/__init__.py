"""Settings, logging, errors and random streams shared by every module."""
