from .seed import SeedGenerator
from .algebra import SetupCampaign
