from .campaign import CampaignModel, run_campaign, read_config
