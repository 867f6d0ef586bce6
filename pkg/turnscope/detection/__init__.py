from turnscope.detection.episodes import EPISODE_COLUMNS, TurnEpisode, detect_turns, signed_steps, trim_episode

__all__ = ["EPISODE_COLUMNS", "TurnEpisode", "detect_turns", "signed_steps", "trim_episode"]
