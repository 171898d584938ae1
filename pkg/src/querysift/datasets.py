"""Bundled synthetic topical corpus and topic pool.

Both are generated from the vocabulary below by ``generate_corpus`` and
``generate_topic_pool`` with fixed seeds, then committed under ``data/``.
Topics are grouped into domains that share a few words, so unrelated
topics score near zero while related ones score in between.
"""
from importlib import resources
from pathlib import Path

import numpy as np

from .simulator import TopicPool

CORPUS_FILE = "topical_corpus.txt"
POOL_FILE = "topics.json"
CORPUS_SEED = 20111
POOL_SEED = 509

# domain -> (shared domain words, {topic: topic words})
DOMAINS = {
    "sports": (
        ["game", "team", "season", "score", "league", "coach", "fans", "playoff"],
        {
            "baseball": ["baseball", "pitcher", "inning", "homerun", "redsox", "yankees", "fenway", "dugout",
                         "bullpen", "shortstop", "mlb", "batting", "catcher", "worldseries", "outfield", "strikeout"],
            "basketball": ["basketball", "nba", "celtics", "lakers", "dunk", "rebound", "courtside", "pointguard",
                           "freethrow", "hoops", "dribble", "layup", "backboard", "threepointer", "jumpshot", "finals"],
            "soccer": ["soccer", "goalkeeper", "midfielder", "premier", "striker", "penalty", "offside", "worldcup",
                       "fifa", "manchester", "barcelona", "corner", "pitch", "referee", "transfer", "freekick"],
            "tennis": ["tennis", "wimbledon", "federer", "nadal", "serve", "backhand", "forehand", "racket",
                       "grandslam", "usopen", "volley", "deuce", "tiebreak", "claycourt", "ace", "baseline"],
        },
    ),
    "health": (
        ["health", "doctor", "symptoms", "treatment", "patient", "medical", "clinic", "risk"],
        {
            "diabetes": ["diabetes", "insulin", "glucose", "bloodsugar", "pancreas", "metformin", "carbohydrate",
                         "hypoglycemia", "a1c", "glycemic", "type2", "endocrinologist", "neuropathy", "diet",
                         "sugarfree", "injection"],
            "cardiology": ["heart", "cardiac", "cholesterol", "arrhythmia", "bypass", "stent", "artery", "aorta",
                           "cardiologist", "hypertension", "pulse", "angina", "statin", "valve", "ekg", "stroke"],
            "dentistry": ["dentist", "tooth", "cavity", "floss", "enamel", "braces", "orthodontist", "gums",
                          "molar", "root", "canal", "whitening", "plaque", "fluoride", "toothache", "crown"],
            "allergy": ["allergy", "pollen", "antihistamine", "hayfever", "sneezing", "peanut", "epipen", "hives",
                        "asthma", "inhaler", "dustmite", "allergen", "itchy", "benadryl", "claritin", "rash"],
        },
    ),
    "travel": (
        ["travel", "trip", "hotel", "flight", "vacation", "booking", "cheap", "tour"],
        {
            "paris": ["paris", "eiffel", "louvre", "seine", "montmartre", "croissant", "champs", "elysees",
                      "notredame", "versailles", "metro", "bistro", "france", "french", "arcdetriomphe", "orsay"],
            "cruise": ["cruise", "caribbean", "cabin", "deck", "ship", "port", "bahamas", "carnival",
                       "royalcaribbean", "excursion", "buffet", "balcony", "itinerary", "embark", "ocean", "captain"],
            "camping": ["camping", "tent", "campfire", "sleepingbag", "trailhead", "backpacking", "hiking",
                        "yosemite", "lantern", "campsite", "marshmallow", "canoe", "wilderness", "rv", "firewood",
                        "compass"],
            "japan": ["japan", "tokyo", "kyoto", "sushi", "ramen", "shinkansen", "osaka", "fuji", "temple",
                      "shrine", "sakura", "yen", "ryokan", "onsen", "anime", "shibuya"],
        },
    ),
    "tech": (
        ["computer", "software", "download", "free", "update", "online", "device", "review"],
        {
            "python": ["python", "pandas", "numpy", "django", "flask", "pip", "virtualenv", "pytest", "jupyter",
                       "decorator", "generator", "dictionary", "traceback", "indentation", "interpreter", "import"],
            "smartphone": ["iphone", "android", "smartphone", "battery", "charger", "touchscreen", "samsung",
                           "galaxy", "ios", "apps", "unlock", "simcard", "carrier", "camera", "screenprotector",
                           "ringtone"],
            "networking": ["router", "wifi", "ethernet", "modem", "bandwidth", "ipaddress", "dns", "firewall",
                           "vpn", "latency", "subnet", "gateway", "tcp", "packet", "switch", "broadband"],
            "gaming": ["xbox", "playstation", "nintendo", "console", "controller", "multiplayer", "zelda", "mario",
                       "halo", "fps", "rpg", "walkthrough", "cheats", "steam", "esports", "speedrun"],
        },
    ),
    "food": (
        ["recipe", "cook", "easy", "best", "homemade", "kitchen", "dinner", "taste"],
        {
            "baking": ["bake", "flour", "yeast", "dough", "oven", "sourdough", "bread", "muffin", "cupcake",
                       "frosting", "butter", "pastry", "knead", "whisk", "cookie", "brownie"],
            "grilling": ["grill", "barbecue", "bbq", "charcoal", "brisket", "ribs", "marinade", "smoker",
                         "burger", "steak", "skewer", "propane", "rub", "pulledpork", "hotdog", "coleslaw"],
            "vegan": ["vegan", "tofu", "tempeh", "lentils", "quinoa", "chickpeas", "plantbased", "kale",
                      "almondmilk", "seitan", "hummus", "nutritionalyeast", "vegetables", "avocado", "smoothie",
                      "cashew"],
            "wine": ["wine", "merlot", "cabernet", "chardonnay", "vineyard", "sommelier", "pinot", "napa",
                     "tannin", "vintage", "corkscrew", "riesling", "bordeaux", "decanter", "rose", "sauvignon"],
        },
    ),
    "finance": (
        ["money", "rate", "bank", "invest", "price", "market", "account", "tax"],
        {
            "mortgage": ["mortgage", "refinance", "downpayment", "escrow", "lender", "foreclosure", "closing",
                         "amortization", "fixedrate", "adjustable", "principal", "appraisal", "homeowner",
                         "preapproval", "realtor", "equity"],
            "stocks": ["stocks", "nasdaq", "dowjones", "dividend", "portfolio", "shares", "broker", "bull",
                       "bear", "ipo", "etf", "sp500", "earnings", "volatility", "hedgefund", "ticker"],
            "crypto": ["bitcoin", "ethereum", "blockchain", "crypto", "wallet", "mining", "token", "exchange",
                       "altcoin", "ledger", "satoshi", "nft", "defi", "coinbase", "halving", "stablecoin"],
            "retirement": ["retirement", "401k", "pension", "ira", "rollover", "annuity", "socialsecurity",
                           "medicare", "retiree", "nestegg", "withdrawal", "contribution", "vesting", "roth",
                           "beneficiary", "payout"],
        },
    ),
    "entertainment": (
        ["watch", "new", "trailer", "cast", "episode", "release", "stream", "premiere"],
        {
            "movies": ["movie", "film", "oscar", "hollywood", "director", "boxoffice", "sequel", "blockbuster",
                       "screenplay", "actor", "actress", "cinema", "imax", "popcorn", "spielberg", "pixar"],
            "music": ["concert", "album", "guitar", "band", "lyrics", "setlist", "drummer", "vinyl", "spotify",
                      "grammy", "singer", "tour", "acoustic", "chords", "festival", "headliner"],
            "books": ["novel", "author", "bestseller", "paperback", "kindle", "library", "chapter", "fiction",
                      "memoir", "publisher", "bookclub", "hardcover", "audiobook", "poetry", "sequel", "tolkien"],
            "tvshows": ["sitcom", "netflix", "hbo", "showrunner", "binge", "finale", "spinoff", "reality",
                        "seinfeld", "friends", "sopranos", "network", "primetime", "miniseries", "renewal",
                        "cliffhanger"],
        },
    ),
    "home": (
        ["home", "house", "diy", "repair", "cost", "install", "room", "tips"],
        {
            "gardening": ["garden", "tomato", "compost", "mulch", "seedling", "perennial", "fertilizer", "weeds",
                          "raisedbed", "pruning", "tulip", "hydrangea", "soil", "watering", "greenhouse", "shovel"],
            "plumbing": ["plumber", "faucet", "leak", "drain", "clog", "pipe", "toilet", "waterheater", "sump",
                         "valve", "wrench", "plunger", "sewer", "garbagedisposal", "shutoff", "caulk"],
            "furniture": ["sofa", "couch", "ikea", "dresser", "recliner", "ottoman", "bookshelf", "upholstery",
                          "mattress", "headboard", "nightstand", "futon", "armchair", "sectional", "cabinet",
                          "tabletop"],
            "petcare": ["dog", "puppy", "kitten", "cat", "veterinarian", "leash", "kibble", "litter", "groomer",
                        "fleas", "adoption", "breed", "labrador", "terrier", "catnip", "vaccination"],
        },
    ),
    "education": (
        ["school", "student", "class", "degree", "learn", "course", "college", "exam"],
        {
            "admissions": ["admissions", "sat", "act", "essay", "application", "harvard", "mit", "ivyleague",
                           "scholarship", "transcript", "gpa", "recommendation", "earlydecision", "campus",
                           "waitlist", "financialaid"],
            "languages": ["spanish", "german", "italian", "mandarin", "grammar", "vocabulary", "duolingo",
                          "fluent", "conjugation", "translation", "pronunciation", "dictionary", "bilingual",
                          "accent", "immersion", "verbs"],
            "math": ["algebra", "calculus", "geometry", "derivative", "integral", "equation", "theorem",
                     "trigonometry", "matrix", "probability", "statistics", "polynomial", "fraction", "proof",
                     "logarithm", "quadratic"],
            "history": ["history", "civilwar", "revolution", "empire", "medieval", "ancient", "rome", "egypt",
                        "pharaoh", "napoleon", "lincoln", "worldwar", "dynasty", "renaissance", "colonial",
                        "archaeology"],
        },
    ),
    "auto": (
        ["car", "vehicle", "drive", "buy", "used", "dealer", "miles", "engine"],
        {
            "carrepair": ["mechanic", "brakes", "transmission", "oilchange", "alternator", "radiator", "muffler",
                          "sparkplug", "tire", "alignment", "checkengine", "coolant", "timingbelt", "bodyshop",
                          "dent", "jumpstart"],
            "electricvehicles": ["tesla", "electric", "ev", "charging", "supercharger", "kwh", "range", "hybrid",
                                 "prius", "leaf", "rivian", "chargingstation", "regenerative", "autopilot",
                                 "plugin", "lithium"],
            "motorcycles": ["motorcycle", "harley", "helmet", "ducati", "kawasaki", "chopper", "sportbike",
                            "throttle", "clutch", "saddlebag", "dirtbike", "scooter", "biker", "leatherjacket",
                            "kickstand", "yamaha"],
            "trucks": ["truck", "pickup", "f150", "silverado", "towing", "diesel", "4x4", "tacoma", "bedliner",
                       "hitch", "ram", "offroad", "payload", "horsepower", "torque", "trailer"],
        },
    ),
    "science": (
        ["science", "research", "theory", "study", "discovery", "experiment", "data", "nature"],
        {
            "space": ["nasa", "astronaut", "mars", "rover", "telescope", "hubble", "galaxy", "nebula", "orbit",
                      "rocket", "spacex", "moon", "asteroid", "comet", "satellite", "blackhole"],
            "climate": ["climate", "warming", "carbon", "emissions", "glacier", "sealevel", "drought",
                        "greenhouse", "renewable", "solar", "wind", "methane", "ipcc", "heatwave", "permafrost",
                        "hurricane"],
            "genetics": ["dna", "gene", "genome", "crispr", "mutation", "chromosome", "heredity", "rna",
                         "sequencing", "protein", "allele", "genotype", "epigenetics", "cloning", "ancestry",
                         "23andme"],
            "dinosaurs": ["dinosaur", "fossil", "trex", "jurassic", "velociraptor", "triceratops", "paleontology",
                          "extinction", "cretaceous", "stegosaurus", "bones", "excavation", "pterodactyl",
                          "brachiosaurus", "meteor", "skeleton"],
        },
    ),
    "fashion": (
        ["style", "wear", "sale", "brand", "outfit", "size", "shop", "trend"],
        {
            "sneakers": ["sneakers", "nike", "adidas", "jordan", "yeezy", "running", "shoes", "sole", "laces",
                         "restock", "airmax", "converse", "vans", "insole", "resell", "kicks"],
            "jewelry": ["jewelry", "necklace", "bracelet", "earrings", "diamond", "engagement", "ring", "gold",
                        "silver", "pendant", "carat", "tiffany", "gemstone", "sapphire", "pearl", "jeweler"],
            "weddings": ["wedding", "bride", "groom", "bridesmaid", "veil", "reception", "florist", "caterer",
                         "honeymoon", "vows", "gown", "tuxedo", "officiant", "registry", "bouquet", "rsvp"],
            "skincare": ["skincare", "moisturizer", "sunscreen", "acne", "serum", "retinol", "cleanser", "toner",
                         "wrinkles", "spf", "exfoliate", "collagen", "pores", "hyaluronic", "dermatologist",
                         "eyecream"],
        },
    ),
    "fitness": (
        ["workout", "exercise", "gym", "weight", "training", "body", "routine", "beginner"],
        {
            "running": ["marathon", "jogging", "5k", "treadmill", "pace", "shinsplints", "sprint", "halfmarathon",
                        "runner", "stride", "cadence", "trailrunning", "bostonmarathon", "hydration", "splits",
                        "tempo"],
            "yoga": ["yoga", "pilates", "meditation", "mat", "downwarddog", "vinyasa", "namaste", "stretching",
                     "flexibility", "mindfulness", "breathing", "asana", "hatha", "lotus", "chakra", "savasana"],
            "weightlifting": ["deadlift", "squat", "benchpress", "barbell", "dumbbell", "protein", "creatine",
                              "bodybuilding", "reps", "sets", "powerlifting", "kettlebell", "biceps", "triceps",
                              "bulking", "preworkout"],
            "cycling": ["bicycle", "cycling", "peloton", "tourdefrance", "derailleur", "handlebar", "pedal",
                        "roadbike", "mountainbike", "spokes", "cadence", "chainring", "velodrome", "bikelane",
                        "cyclist", "saddle"],
        },
    ),
    "jobs": (
        ["job", "career", "salary", "hiring", "work", "company", "interview", "apply"],
        {
            "resume": ["resume", "coverletter", "linkedin", "references", "cv", "template", "skills",
                       "objective", "headhunter", "recruiter", "skillset", "contacts", "jobfair",
                       "internship", "applicant", "keywords"],
            "remotework": ["remote", "telecommute", "zoom", "slack", "homeoffice", "freelance", "coworking",
                           "webcam", "timezone", "async", "standup", "deskchair", "upwork", "gig",
                           "digitalnomad", "headset"],
            "unemployment": ["unemployment", "layoff", "severance", "benefits", "claim", "jobless", "cobra",
                             "furlough", "eligibility", "weeklyclaim", "stimulus", "caseworker", "workforce",
                             "retraining", "dol", "appeal"],
            "nursingjobs": ["nurse", "nursing", "rn", "lpn", "nclex", "scrubs", "shift", "hospital", "icu",
                            "traveler", "travelnurse", "charge", "bedside", "preceptor", "bsn", "triage"],
        },
    ),
    "law": (
        ["law", "legal", "court", "lawyer", "case", "rights", "attorney", "file"],
        {
            "divorce": ["divorce", "custody", "alimony", "childsupport", "separation", "prenup", "mediation",
                        "visitation", "spouse", "settlement", "uncontested", "familycourt", "annulment",
                        "guardian", "maintenance", "coparenting"],
            "immigration": ["visa", "greencard", "citizenship", "uscis", "h1b", "asylum", "naturalization",
                            "passport", "deportation", "refugee", "sponsorship", "workpermit", "embassy",
                            "consulate", "daca", "immigrant"],
            "traffic": ["speeding", "ticket", "dui", "license", "suspension", "demerit", "trafficcourt",
                        "radar", "citation", "impound", "dmv", "redlight", "parking", "violation", "fine",
                        "breathalyzer"],
            "patents": ["patent", "trademark", "copyright", "infringement", "uspto", "prior", "claims",
                        "inventor", "provisional", "royalty", "licensing", "intellectual", "tradesecret",
                        "filingfee", "patentable", "examiner"],
        },
    ),
    "weather": (
        ["weather", "forecast", "today", "tomorrow", "temperature", "storm", "warning", "alert"],
        {
            "snow": ["snow", "blizzard", "snowfall", "plow", "sleet", "icy", "snowshovel", "snowstorm", "frostbite",
                     "windchill", "snowboard", "ski", "slopes", "avalanche", "snowman", "noreaster"],
            "tornado": ["tornado", "twister", "funnel", "supercell", "stormchaser", "shelter", "siren",
                        "tornadoalley", "fujita", "hail", "thunderstorm", "lightning", "doppler", "wallcloud",
                        "debris", "watchbox"],
            "beachweather": ["beach", "surf", "tide", "sunburn", "humidity", "uvindex", "heatindex",
                             "boardwalk", "lifeguard", "ripcurrent", "sandcastle", "swimsuit", "umbrella",
                             "seabreeze", "waves", "sunny"],
            "floods": ["flood", "floodplain", "levee", "sandbag", "rainfall", "flashflood", "evacuation",
                       "fema", "overflow", "riverbank", "monsoon", "downpour", "inundation", "floodinsurance",
                       "dam", "waterlogged"],
        },
    ),
    "crafts": (
        ["craft", "handmade", "pattern", "supplies", "project", "idea", "kit", "tutorial"],
        {
            "knitting": ["knitting", "yarn", "crochet", "needles", "scarf", "sweater", "purl", "stitch",
                         "skein", "wool", "cardigan", "beanie", "afghan", "castoff", "gauge", "mittens"],
            "woodworking": ["woodworking", "lathe", "chisel", "sawdust", "plywood", "dovetail", "jigsaw",
                            "sander", "varnish", "oak", "walnut", "workbench", "routerbit", "clamp", "mortise",
                            "birdhouse"],
            "scrapbooking": ["scrapbook", "stickers", "cardstock", "photoalbum", "glue", "stamps", "embellish",
                             "ribbon", "punches", "journaling", "diecut", "washitape", "memories", "layout",
                             "paper", "scissors"],
            "pottery": ["pottery", "ceramics", "clay", "kiln", "glaze", "wheel", "porcelain", "stoneware",
                        "earthenware", "vase", "mug", "throwing", "slip", "bisque", "raku", "sculpting"],
        },
    ),
    "parenting": (
        ["kids", "child", "parents", "baby", "age", "family", "mom", "toddler"],
        {
            "newborn": ["newborn", "diaper", "breastfeeding", "formula", "crib", "swaddle", "pacifier",
                        "colic", "stroller", "carseat", "onesie", "burp", "nursery", "pediatrician", "teething",
                        "babymonitor"],
            "pregnancy": ["pregnancy", "pregnant", "trimester", "ultrasound", "obgyn", "duedate", "morningsickness",
                          "prenatal", "midwife", "labor", "contractions", "epidural", "maternity", "fetus",
                          "doula", "gestational"],
            "toys": ["lego", "barbie", "dollhouse", "puzzle", "playdoh", "stuffed", "teddybear", "nerf",
                     "hotwheels", "boardgame", "rattle", "blocks", "trampoline", "swingset", "actionfigure",
                     "crayons"],
            "homework": ["homework", "worksheet", "spelling", "multiplication", "tutor", "scienceproject",
                         "reading", "bookreport", "flashcards", "gradeschool", "teacher", "kindergarten",
                         "phonics", "longdivision", "recess", "spellingbee"],
        },
    ),
    "outdoors": (
        ["outdoor", "lake", "river", "gear", "trail", "permit", "spot", "outfitter"],
        {
            "fishing": ["fishing", "bass", "trout", "lure", "bait", "rod", "reel", "flyfishing", "tackle",
                        "catfish", "salmon", "walleye", "bobber", "fishinglicense", "angler", "sinker"],
            "hunting": ["hunting", "deer", "elk", "rifle", "bowhunting", "crossbow", "tagging", "treestand",
                        "camouflage", "decoy", "duck", "turkey", "scope", "antler", "huntingseason", "blind"],
            "birdwatching": ["birdwatching", "binoculars", "warbler", "hawk", "owl", "feeder", "audubon",
                             "migration", "heron", "cardinal", "bluejay", "hummingbird", "birdsong", "eagle",
                             "sparrow", "fieldguide"],
            "kayaking": ["kayak", "paddle", "rapids", "whitewater", "lifejacket", "sprayskirt", "portage",
                         "paddling", "seakayak", "eskimoroll", "drybag", "inflatable", "rafting", "current",
                         "launch", "paddleboard"],
        },
    ),
    "aviation": (
        ["airport", "plane", "pilot", "airline", "aircraft", "terminal", "fly", "airspace"],
        {
            "pilottraining": ["flightschool", "cessna", "cockpit", "checkride", "faa", "instrument", "solo",
                              "logbook", "taxiway", "runway", "atc", "stall", "crosswind", "private", "flightmedical",
                              "altimeter"],
            "airtravel": ["tsa", "boarding", "layover", "luggage", "carryon", "jetlag", "frequentflyer",
                          "upgrade", "aisle", "seatmap", "delayed", "cancelled", "gate", "security", "rewards",
                          "checkin"],
            "drones": ["drone", "quadcopter", "dji", "gimbal", "propeller", "fpv", "aerial", "footage",
                       "nofly", "hover", "gps", "mavic", "flighttime", "remoteid", "part107", "lipo"],
            "airshows": ["airshow", "blueangels", "thunderbirds", "aerobatics", "warbird", "biplane",
                         "formation", "flyover", "jet", "spitfire", "mustang", "hangar", "oshkosh",
                         "smoketrail", "barrelroll", "wingwalker"],
        },
    ),
    "arts": (
        ["art", "artist", "museum", "gallery", "painting", "exhibit", "famous", "collection"],
        {
            "painting": ["oilpaint", "watercolor", "acrylic", "canvas", "easel", "brushstroke", "impressionism",
                         "monet", "vangogh", "palette", "portrait", "landscape", "still", "picasso", "abstract",
                         "gouache"],
            "photography": ["photography", "lens", "aperture", "shutter", "tripod", "dslr", "mirrorless",
                            "exposure", "iso", "lightroom", "bokeh", "nikon", "canon", "megapixel", "zoomlens",
                            "darkroom"],
            "theater": ["theater", "broadway", "musical", "playwright", "stage", "audition", "rehearsal",
                        "curtain", "matinee", "seats", "hamilton", "shakespeare", "understudy", "monologue",
                        "orchestra", "intermission"],
            "dance": ["ballet", "salsa", "tango", "hiphop", "choreography", "pointe", "tutu", "ballroom",
                      "waltz", "tapdance", "breakdance", "recital", "danceclass", "swingdance", "flamenco",
                      "nutcracker"],
        },
    ),
    "government": (
        ["government", "state", "federal", "official", "policy", "agency", "office", "county"],
        {
            "elections": ["election", "ballot", "vote", "polling", "candidate", "primaries", "caucus",
                          "absentee", "voterregistration", "electoral", "campaign", "debate", "incumbent",
                          "turnout", "precinct", "recount"],
            "taxes": ["irs", "taxreturn", "refund", "w2", "1099", "deduction", "taxbracket", "audit",
                      "turbotax", "withholding", "itemize", "filingstatus", "capitalgains", "estimated",
                      "taxcredit", "extension"],
            "socialservices": ["foodstamps", "snap", "medicaid", "welfare", "housingassistance", "section8",
                               "wic", "disability", "ssi", "benefitsoffice", "enrollment", "subsidy",
                               "childcare", "heatingassistance", "eligible", "tanf"],
            "postal": ["usps", "postoffice", "mailing", "mailbox", "zipcode", "tracking", "package",
                       "certifiedmail", "priority", "postage", "mailcarrier", "pobox", "forwarding",
                       "delivery", "envelope", "shipping"],
        },
    ),
    "wildlife": (
        ["animal", "species", "wild", "habitat", "facts", "zoo", "endangered", "predator"],
        {
            "sharks": ["shark", "greatwhite", "hammerhead", "sharkweek", "fin", "jaws", "reef", "tigershark",
                       "cartilage", "chum", "bullshark", "whaleshark", "sharkattack", "gills", "megalodon",
                       "nurseshark"],
            "bears": ["bear", "grizzly", "polarbear", "panda", "hibernation", "cub", "blackbear", "bearspray",
                      "koala", "salmonrun", "den", "honey", "kodiak", "sloth", "arctic", "yellowstone"],
            "insects": ["insect", "butterfly", "beetle", "ant", "bee", "honeybee", "wasp", "caterpillar",
                        "mosquito", "dragonfly", "ladybug", "cicada", "larva", "colony", "pollinator",
                        "entomology"],
            "reptiles": ["reptile", "snake", "anaconda", "lizard", "gecko", "iguana", "turtle", "tortoise",
                         "alligator", "crocodile", "chameleon", "rattlesnake", "venom", "scales", "terrarium",
                         "boa"],
        },
    ),
    "shopping": (
        ["deal", "discount", "coupon", "store", "order", "freeshipping", "return", "cheapest"],
        {
            "blackfriday": ["blackfriday", "cybermonday", "doorbuster", "holiday", "giftcard", "layaway",
                            "amazon", "walmart", "target", "bestbuy", "bargain", "clearance", "markdown",
                            "christmas", "wishlist", "stockingstuffer"],
            "groceries": ["grocery", "supermarket", "produce", "organic", "milk", "eggs", "cereal", "bulk",
                          "costco", "aldi", "wholefoods", "checkout", "cart", "pantry", "frozen", "deli"],
            "appliances": ["refrigerator", "dishwasher", "washer", "dryer", "microwave", "stove", "freezer",
                           "blender", "toaster", "airfryer", "vacuum", "roomba", "instantpot", "kitchenaid",
                           "warranty", "energystar"],
            "thrift": ["thrift", "goodwill", "consignment", "yardsale", "garagesale", "retro", "secondhand",
                       "flea", "antique", "estate", "pawnshop", "ebay", "craigslist", "resale", "haggle",
                       "collectibles"],
        },
    ),
}

GENERAL_WORDS = (
    "the of and to a in is for on that with as it was at by from be this are or an have not "
    "you your can all more will about one which has when if there their what out up some like "
    "so who how than them other into time only new also these any may after first two over most "
    "where way many year people just make know get good well very much because through each "
    "same back even still should need find use here day last right three own those while old "
    "under place around another long help part show every near next both between never without "
    "work world life great small large big high little local different early important public "
    "open full real best better sure able free simple news guide page list information"
).split()


def topic_words():
    """[(domain, topic, domain words, topic words)] in a fixed order."""
    out = []
    for domain, (shared, topics) in DOMAINS.items():
        for topic, words in topics.items():
            out.append((domain, topic, shared, words))
    return out


def generate_corpus(seed=CORPUS_SEED, n_docs=1500, doc_len=(80, 160)):
    """One document per string, each mostly about a single topic."""
    rng = np.random.default_rng(seed)
    topics = topic_words()
    general = np.array(GENERAL_WORDS)
    zipf = 1.0 / np.arange(1, len(general) + 1)
    zipf /= zipf.sum()
    docs = []
    for d in range(n_docs):
        _, _, shared, words = topics[d % len(topics)]
        length = int(rng.integers(doc_len[0], doc_len[1] + 1))
        kind = rng.random(length)
        gen = general[rng.choice(len(general), size=length, p=zipf)]
        own = rng.integers(len(words), size=length)
        dom = rng.integers(len(shared), size=length)
        stray = rng.integers(len(topics), size=length)
        stray_pos = rng.random(length)
        tokens = []
        for i, u in enumerate(kind):
            if u < 0.50:
                tokens.append(gen[i])
            elif u < 0.88:
                tokens.append(words[own[i]])
            elif u < 0.97:
                tokens.append(shared[dom[i]])
            else:
                other = topics[stray[i]][3]
                tokens.append(other[int(stray_pos[i] * len(other))])
        docs.append(" ".join(tokens))
    return docs


def generate_topic_pool(seed=POOL_SEED, per_topic=20):
    """Topic pool of short queries drawn from each topic's words."""
    rng = np.random.default_rng(seed)
    topics, names = [], []
    for domain, topic, shared, words in topic_words():
        queries = []
        seen = set()
        while len(queries) < per_topic:
            n = int(rng.choice([2, 3, 3, 4]))
            picked = [words[i] for i in rng.choice(len(words), size=n, replace=False)]
            if rng.random() < 0.25:
                picked.append(shared[rng.integers(len(shared))])
            q = " ".join(picked)
            if q not in seen:
                seen.add(q)
                queries.append(q)
        topics.append(tuple(queries))
        names.append(f"{domain}/{topic}")
    return TopicPool(tuple(topics), tuple(names))


def _data_path(name):
    return resources.files("querysift").joinpath("data").joinpath(name)


def corpus_path():
    return _data_path(CORPUS_FILE)


def pool_path():
    return _data_path(POOL_FILE)


def load_corpus():
    with corpus_path().open(encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh if line.strip()]


def load_topic_pool():
    with pool_path().open(encoding="utf-8") as fh:
        return TopicPool.from_json(fh)


def write_bundled(directory):
    """Regenerate the bundled files into ``directory``."""
    directory = Path(directory)
    with open(directory / CORPUS_FILE, "w", encoding="utf-8") as fh:
        for doc in generate_corpus():
            fh.write(doc + "\n")
    with open(directory / POOL_FILE, "w", encoding="utf-8") as fh:
        generate_topic_pool().to_json(fh)
