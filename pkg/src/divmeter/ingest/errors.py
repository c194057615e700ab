class IngestError(Exception):
    """Base class for all structured ingest failures."""
