from model_store.artifact import FORMAT_VERSION, ModelArtifact, load, save

__all__ = ["FORMAT_VERSION", "ModelArtifact", "load", "save"]
