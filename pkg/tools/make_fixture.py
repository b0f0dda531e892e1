#!/usr/bin/env python3
"""Generate the desk-scale demo knowledge graph (data/fixture.jsonl).

Curated core: award/keyword entities the demo queries rely on, US presidents
with heights and term qualifiers, movie triangles where the director is
married to a cast member (plus famous non-triangle distractors), and the
scientists behind the award examples.  Programmatic filler rounds the graph
out to ~300 entities / ~1500 claims so similarity search has something to
rank against.

Deterministic: same script, same bytes.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "data" / "fixture.jsonl"

# ---------------------------------------------------------------------------
# Vocabulary

PROPERTIES = [
    ("P31", "instance of", "class the subject is a particular example of", "entity_id"),
    ("P166", "award received", "award or medal the person received", "entity_id"),
    ("P57", "director", "person who directed the film", "entity_id"),
    ("P344", "director of photography", "person behind the camera work", "entity_id"),
    ("P26", "spouse", "person they are married to", "entity_id"),
    ("P161", "cast member", "actor performing in the film", "entity_id"),
    ("P39", "position held", "public office or position the person holds", "entity_id"),
    ("P580", "start time", "start of the time interval", "date"),
    ("P582", "end time", "end of the time interval", "date"),
    ("P569", "date of birth", "day the person was born", "date"),
    ("P570", "date of death", "day the person died", "date"),
    ("P2048", "height", "vertical length of the subject in metres", "numeric"),
    ("P27", "country of citizenship", "country the person is a citizen of", "entity_id"),
    ("P19", "place of birth", "city where the person was born", "entity_id"),
    ("P69", "educated at", "school or university the person attended", "entity_id"),
    ("P108", "employer", "organization the person works for", "entity_id"),
    ("P106", "occupation", "kind of work the person does", "entity_id"),
    ("P800", "notable work", "famous creation of the person", "entity_id"),
    ("P136", "genre", "artistic genre of the work", "entity_id"),
    ("P495", "country of origin", "country the work was created in", "entity_id"),
    ("P577", "publication date", "day the work was first released", "date"),
    ("P2047", "duration", "length of the work in minutes", "numeric"),
    ("P1082", "population", "number of inhabitants", "numeric"),
    ("P36", "capital", "seat of government of the country", "entity_id"),
    ("P17", "country", "sovereign state the place belongs to", "entity_id"),
    ("P131", "located in", "administrative territory the place lies in", "entity_id"),
    ("P571", "inception", "day the organization was founded", "date"),
    ("P159", "headquarters location", "city of the main office", "entity_id"),
    ("P112", "founded by", "person who established the organization", "entity_id"),
    ("P1411", "nominated for", "award nomination the person got", "entity_id"),
]

# Classes
HUMAN = "Q5"
FILM = "Q11424"
CITY = "Q515"
COUNTRY = "Q6256"
AWARD = "Q618779"
POSITION = "Q4164871"
UNIVERSITY = "Q3918"
GENRE = "Q201658"

CLASSES = [
    (HUMAN, "human", "person, member of our species", 900),
    (CITY, "city", "large permanent human settlement", 500),
    (COUNTRY, "country", "distinct territory in political geography", 520),
    (AWARD, "award", "honor given in recognition of excellence", 240),
    (POSITION, "public office", "official position in government", 200),
    (UNIVERSITY, "university", "institution granting university degrees", 320),
    (GENRE, "art genre", "genre category of creative works", 150),
]
# FILM is defined with the movie keyword entities below.

AWARDS = [
    ("Q8624", "Academy Award of Merit", "the Oscar statuette for merit", 160),
    ("Q185667", "Turing Award", "annual computing prize", 140),
    ("Q7408872", "Medal of Merit", "decoration for exceptional civilian service", 40),
    ("Q1702885", "Medal for Merit to Culture", "state decoration for cultural contributions", 25),
    ("Q1307005", "Medal for Merit", "former United States civilian decoration", 35),
    ("Q3753203", "Gold Medal of Merit in the Fine Arts", "Spanish honor for achievements in the arts", 30),
    ("Q103360", "National Medal of Science", "United States honor for research contributions", 60),
    ("Q935", "Nobel Prize in Physics", "yearly international physics distinction", 170),
    ("Q37922", "Nobel Peace Prize", "yearly international peace distinction", 180),
    ("Q7191", "Nobel Prize", "set of yearly international distinctions", 190),
    ("Q1011547", "BAFTA Fellowship", "lifetime honor of the British film academy", 45),
    ("Q281939", "Primetime Emmy Award", "United States television production honor", 85),
]

TURING_EXTRAS = [
    ("Q163310", "Turing machine", "abstract mathematical model of computation", 95),
    ("Q9241105", "Category:Turing Award", "grouping page for recipients of the annual computing prize", 5),
    ("Q490481", "Turing", "impact crater on the far side of the Moon", 8),
]

MOVIE_KEYWORD_ENTITIES = [
    (FILM, "film", "motion picture, a movie shown in cinemas", 800),
    ("Q2512663", "Movie", "disambiguation page for several works", 12),
    ("Q12362625", "Film", "studio album by an electronic duo", 9),
    ("Q223770", "B movie", "low budget commercial motion picture", 55),
    ("Q1405677", "Movie Movie", "1978 anthology comedy by Stanley Donen", 14),
]

COUNTRIES = [
    ("Q30", "United States of America", "federal republic in North America", 700, "Q61"),
    ("Q145", "United Kingdom", "island country in north-western Europe", 620, "Q84"),
    ("Q142", "France", "republic in western Europe", 600, "Q90"),
    ("Q183", "Germany", "federal republic in central Europe", 610, "Q64"),
    ("Q38", "Italy", "republic in southern Europe", 560, "Q220"),
    ("Q16", "Canada", "federation in northern North America", 540, "Q1930"),
    ("Q408", "Australia", "sovereign state in Oceania", 530, "Q3114"),
    ("Q17", "Japan", "island country in East Asia", 590, "Q1490"),
]

CITIES = [
    ("Q61", "Washington", "capital city of the United States", 400, "Q30", 705749),
    ("Q84", "London", "capital and largest city of England", 640, "Q145", 8982000),
    ("Q90", "Paris", "capital and largest city of France", 630, "Q142", 2148000),
    ("Q64", "Berlin", "capital and largest city of Germany", 540, "Q183", 3769000),
    ("Q220", "Rome", "capital and largest city of Italy", 520, "Q38", 2873000),
    ("Q1930", "Ottawa", "capital city of Canada", 260, "Q16", 994837),
    ("Q3114", "Canberra", "capital city of Australia", 200, "Q408", 431380),
    ("Q1490", "Tokyo", "capital and most populous city of Japan", 600, "Q17", 13960000),
    ("Q60", "New York City", "most populous city in the United States", 690, "Q30", 8336817),
    ("Q65", "Los Angeles", "second most populous United States city", 600, "Q30", 3979576),
    ("Q62", "San Francisco", "city on the Californian coast", 480, "Q30", 881549),
    ("Q1297", "Chicago", "most populous city of Illinois", 470, "Q30", 2693976),
    ("Q100", "Boston", "capital and largest city of Massachusetts", 430, "Q30", 692600),
    ("Q18094", "Honolulu", "capital of Hawaii", 210, "Q30", 345064),
    ("Q16552", "Seattle", "largest city of Washington state", 380, "Q30", 744955),
    ("Q23197", "Hodgenville", "Kentucky town", 30, "Q30", 3206),
    ("Q33935", "Maida Vale", "district of west London", 25, "Q145", 9000),
    ("Q23148", "Salt Lake City", "capital city of Utah", 230, "Q30", 200133),
    ("Q49145", "Hope", "Arkansas city", 20, "Q30", 9891),
    ("Q41819", "Scranton", "city in Pennsylvania", 60, "Q30", 76328),
]

UNIVERSITIES = [
    ("Q49108", "Massachusetts Institute of Technology", "research school in Cambridge", 430, "Q100", "1861-04-10"),
    ("Q41506", "Stanford University", "private research campus in California", 440, "Q62", "1885-11-11"),
    ("Q35794", "Harvard University", "oldest United States college", 460, "Q100", "1636-09-08"),
    ("Q203534", "University of Utah", "public research campus in Salt Lake City", 180, "Q23148", "1850-02-28"),
    ("Q2166009", "King's College", "constituent college of the University of Cambridge", 150, "Q84", "1441-02-12"),
    ("Q155921", "Princeton University", "private research campus in New Jersey", 420, "Q60", "1746-10-22"),
    ("Q168756", "University of California, Berkeley", "public research campus in California", 420, "Q62", "1868-03-23"),
    ("Q131252", "Columbia University", "private campus in New York City", 410, "Q60", "1754-05-25"),
]

OCCUPATIONS = [
    ("Q82594", "computer scientist", "researcher of computation and information", 120),
    ("Q33999", "actor", "person performing in films or plays", 300),
    ("Q2526255", "film director", "director of films", 200),
    ("Q82955", "politician", "person active in politics", 280),
    ("Q36180", "writer", "person who writes books or stories", 260),
    ("Q901", "scientist", "person doing systematic research", 270),
    ("Q33231", "photographer", "person who takes photographs", 90),
]

GENRES = [
    ("Q130232", "drama film", "serious narrative film genre", 80),
    ("Q157443", "comedy film", "humorous film genre", 85),
    ("Q200092", "horror film", "frightening film genre", 75),
    ("Q188473", "action film", "fast paced film genre", 78),
    ("Q471839", "science fiction film", "speculative future film genre", 82),
    ("Q2484376", "thriller film", "suspenseful film genre", 70),
]

POSITIONS = [
    ("Q11696", "President of the United States", "office of the president, the American head of state", 300),
    ("Q13217683", "United States senator", "senator in the upper chamber of congress", 140),
    ("Q3559135", "governor of a United States state", "state chief executive", 90),
    ("Q14212", "prime minister", "head of government", 180),
]

# (id, label, description, popularity, birth, death, citizenship, birthplace)
PRESIDENTS = [
    ("Q23", "George Washington", "first American president", 420, "1732-02-22", "1799-12-14", 1.88),
    ("Q11812", "Thomas Jefferson", "third American president", 380, "1743-04-13", "1826-07-04", 1.89),
    ("Q11813", "James Madison", "fourth American president", 300, "1751-03-16", "1836-06-28", 1.63),
    ("Q91", "Abraham Lincoln", "sixteenth American president", 450, "1809-02-12", "1865-04-15", 1.93),
    ("Q33866", "Theodore Roosevelt", "twenty-sixth American president", 360, "1858-10-27", "1919-01-06", 1.78),
    ("Q8007", "Franklin Delano Roosevelt", "thirty-second American president", 400, "1882-01-30", "1945-04-12", 1.88),
    ("Q9696", "John Fitzgerald Kennedy", "thirty-fifth American president", 410, "1917-05-29", "1963-11-22", 1.83),
    ("Q9640", "Lyndon Baines Johnson", "thirty-sixth American president", 290, "1908-08-27", "1973-01-22", 1.92),
    ("Q9588", "Richard Nixon", "thirty-seventh American president", 330, "1913-01-09", "1994-04-22", 1.82),
    ("Q23685", "Jimmy Carter", "thirty-ninth American president", 310, "1924-10-01", None, 1.77),
    ("Q9960", "Ronald Reagan", "fortieth American president", 370, "1911-02-06", "2004-06-05", 1.85),
    ("Q1124", "Bill Clinton", "forty-second American president", 350, "1946-08-19", None, 1.88),
    ("Q207", "George Walker Bush", "forty-third American president", 340, "1946-07-06", None, 1.81),
    ("Q76", "Barack Obama", "forty-fourth American president", 460, "1961-08-04", None, 1.85),
    ("Q22686", "Donald Trump", "forty-fifth American president", 440, "1946-06-14", None, 1.90),
    ("Q6279", "Joe Biden", "forty-sixth president Joseph Robinette Biden", 430, "1942-11-20", None, 1.82),
]

PRESIDENT_TERMS = {
    "Q23": ("1789-04-30", "1797-03-04"),
    "Q11812": ("1801-03-04", "1809-03-04"),
    "Q11813": ("1809-03-04", "1817-03-04"),
    "Q91": ("1861-03-04", "1865-04-15"),
    "Q33866": ("1901-09-14", "1909-03-04"),
    "Q8007": ("1933-03-04", "1945-04-12"),
    "Q9696": ("1961-01-20", "1963-11-22"),
    "Q9640": ("1963-11-22", "1969-01-20"),
    "Q9588": ("1969-01-20", "1974-08-09"),
    "Q23685": ("1977-01-20", "1981-01-20"),
    "Q9960": ("1981-01-20", "1989-01-20"),
    "Q1124": ("1993-01-20", "2001-01-20"),
    "Q207": ("2001-01-20", "2009-01-20"),
    "Q76": ("2009-01-20", "2017-01-20"),
    "Q22686": ("2017-01-20", "2021-01-20"),
    "Q6279": ("2021-01-20", None),
}

PRESIDENT_BIRTHPLACES = {
    "Q91": "Q23197", "Q76": "Q18094", "Q1124": "Q49145", "Q6279": "Q41819",
}

# (id, label, description, pop, birth, death, awards, almae matres)
SCIENTISTS = [
    ("Q312656", "Edwin Catmull", "computer graphics researcher and studio president", 120,
     "1945-03-31", None, ["Q8624", "Q185667"], ["Q203534"]),
    ("Q17455", "Donald Knuth", "author of the art of computer programming", 150,
     "1938-01-10", None, ["Q185667", "Q103360"], ["Q41506"]),
    ("Q92604", "Edsger Dijkstra", "Dutch pioneer of structured programming", 130,
     "1930-05-11", "2002-08-06", ["Q185667"], []),
    ("Q92741", "John McCarthy", "inventor of the Lisp programming language", 110,
     "1927-09-04", "2011-10-24", ["Q185667"], ["Q155921"]),
    ("Q92614", "Marvin Minsky", "artificial intelligence laboratory cofounder", 105,
     "1927-08-09", "2016-01-24", ["Q185667"], ["Q35794"]),
    ("Q92756", "Dennis Ritchie", "creator of the C programming language", 125,
     "1941-09-09", "2011-10-12", ["Q185667"], ["Q35794"]),
    ("Q92616", "Ken Thompson", "creator of Unix", 115,
     "1943-02-04", None, ["Q185667"], ["Q168756"]),
    ("Q92643", "Richard Hamming", "error correcting code researcher", 95,
     "1915-02-11", "1998-01-07", ["Q185667"], []),
    ("Q7251", "Alan Turing", "British mathematician and codebreaker", 260,
     "1912-06-23", "1954-06-07", [], ["Q2166009"]),
    ("Q92619", "Leslie Lamport", "researcher of distributed computing systems", 90,
     "1941-02-07", None, ["Q185667"], ["Q49108"]),
    ("Q92894", "Vint Cerf", "internet protocol pioneer", 100,
     "1943-06-23", None, ["Q185667"], ["Q41506"]),
    ("Q92628", "Barbara Liskov", "researcher of data abstraction in programming", 92,
     "1939-11-07", None, ["Q185667"], ["Q41506"]),
    ("Q11641", "Grace Hopper", "pioneer of machine independent programming", 135,
     "1906-12-09", "1992-01-01", ["Q103360"], ["Q131252"]),
    ("Q937", "Albert Einstein", "theoretical physicist of relativity", 500,
     "1879-03-14", "1955-04-18", ["Q935"], []),
    ("Q7186", "Marie Curie", "physicist and chemist of radioactivity", 470,
     "1867-11-07", "1934-07-04", ["Q935"], []),
    ("Q1035", "Charles Darwin", "naturalist who described natural selection", 420,
     "1809-02-12", "1882-04-19", [], []),
    ("Q7259", "Ada Lovelace", "first author of a published algorithm", 220,
     "1815-12-10", "1852-11-27", [], []),
    ("Q8078", "Kurt Godel", "logician of incompleteness", 180,
     "1906-04-28", "1978-01-14", [], ["Q155921"]),
    ("Q17714", "John von Neumann", "mathematician of game theory and computing", 230,
     "1903-12-28", "1957-02-08", ["Q1307005"], ["Q155921"]),
    ("Q123280", "Vannevar Bush", "engineer who organized wartime research", 85,
     "1890-03-11", "1974-06-28", ["Q1307005"], ["Q49108"]),
]

# Movie people: (id, label, description, pop, birth, spouse, occupations)
MOVIE_PEOPLE = [
    ("Q313039", "John Krasinski", "American actor and film director", 160,
     "1979-10-20", "Q81328", ["Q33999", "Q2526255"]),
    ("Q81328", "Emily Blunt", "British and American actress", 170,
     "1983-02-23", "Q313039", ["Q33999"]),
    ("Q13909", "Angelina Jolie", "American actress and filmmaker", 250,
     "1975-06-04", "Q35332", ["Q33999", "Q2526255"]),
    ("Q35332", "Brad Pitt", "American actor and film producer", 240,
     "1963-12-18", "Q13909", ["Q33999"]),
    ("Q188573", "Judd Apatow", "American comedy film director", 120,
     "1967-12-06", "Q229324", ["Q2526255", "Q36180"]),
    ("Q229324", "Leslie Mann", "American comedic actress", 110,
     "1972-03-26", "Q188573", ["Q33999"]),
    ("Q2001", "Stanley Kubrick", "American film director of meticulous style", 260,
     "1928-07-26", None, ["Q2526255", "Q33231"]),
    ("Q37079", "Tom Cruise", "American leading film actor", 230,
     "1962-07-03", "Q154959", ["Q33999"]),
    ("Q154959", "Nicole Kidman", "Australian and American actress", 220,
     "1967-06-20", "Q37079", ["Q33999"]),
    ("Q3772", "Quentin Tarantino", "American director of stylized crime films", 240,
     "1963-03-27", None, ["Q2526255", "Q36180"]),
    ("Q82216", "Uma Thurman", "American actress and model", 150,
     "1970-04-29", None, ["Q33999"]),
    ("Q295964", "Garry Marshall", "American television and film director", 90,
     "1934-11-13", None, ["Q2526255"]),
    ("Q40523", "Julia Roberts", "American film actress", 210,
     "1967-10-28", None, ["Q33999"]),
    ("Q4465", "Peter Jackson", "New Zealand fantasy film director", 200,
     "1961-10-31", None, ["Q2526255"]),
    ("Q157191", "Liv Tyler", "American actress and model", 140,
     "1977-07-01", None, ["Q33999"]),
    ("Q8877", "Steven Spielberg", "American director of blockbuster cinema", 300,
     "1946-12-18", None, ["Q2526255"]),
    ("Q56094", "Roger Deakins", "British cinematographer of wide acclaim", 95,
     "1949-05-24", None, ["Q33231"]),
    ("Q106942", "Charlotte Bruus Christensen", "Danish cinematographer", 40,
     "1978-03-25", None, ["Q33231"]),
    ("Q55294", "Sydney Pollack", "American film director and actor", 110,
     "1934-07-01", None, ["Q2526255", "Q33999"]),
    ("Q103876", "Millicent Simmonds", "American deaf teen actress", 55,
     "2003-03-06", None, ["Q33999"]),
    ("Q229166", "Noah Jupe", "British young film actor", 60,
     "2005-02-25", None, ["Q33999"]),
    ("Q23844", "Seth Rogen", "Canadian American comedy actor", 140,
     "1982-04-15", None, ["Q33999"]),
    ("Q200566", "Katherine Heigl", "American film and television actress", 120,
     "1978-11-24", None, ["Q33999"]),
    ("Q193668", "Paul Rudd", "American comedy film actor", 130,
     "1969-04-06", None, ["Q33999"]),
]

# Movies: (id, label, description, pop, director, dop, cast, genre, pubdate, duration)
MOVIES = [
    ("Q47300912", "A Quiet Place", "2018 horror film about a silent family", 130,
     "Q313039", "Q106942", ["Q81328", "Q313039", "Q103876", "Q229166"],
     "Q200092", "2018-04-06", 90.0),
    ("Q97064968", "A Quiet Place Part II", "2020 sequel to the silent horror film", 100,
     "Q313039", None, ["Q81328", "Q103876", "Q229166"],
     "Q200092", "2020-09-23", 97.0),
    ("Q18154563", "By the Sea", "2015 marital drama set on the French coast", 45,
     "Q13909", None, ["Q13909", "Q35332"],
     "Q130232", "2015-11-13", 122.0),
    ("Q1138613", "Knocked Up", "2007 unplanned pregnancy comedy", 80,
     "Q188573", None, ["Q23844", "Q200566", "Q229324", "Q193668"],
     "Q157443", "2007-06-01", 129.0),
    ("Q190086", "Eyes Wide Shut", "1999 erotic mystery drama in New York", 150,
     "Q2001", None, ["Q37079", "Q154959", "Q55294"],
     "Q130232", "1999-07-16", 159.0),
    ("Q104123", "Pulp Fiction", "1994 nonlinear crime film anthology", 290,
     "Q3772", None, ["Q82216"],
     "Q2484376", "1994-10-14", 154.0),
    ("Q160071", "Pretty Woman", "1990 romantic comedy in Los Angeles", 200,
     "Q295964", None, ["Q40523"],
     "Q157443", "1990-03-23", 119.0),
    ("Q127367", "The Fellowship of the Ring", "2001 first part of the fantasy trilogy", 280,
     "Q4465", None, ["Q157191"],
     "Q188473", "2001-12-19", 178.0),
    ("Q108946", "Jaws", "1975 shark attack thriller at a beach town", 240,
     "Q8877", None, ["Q55294"],
     "Q2484376", "1975-06-20", 124.0),
    ("Q220410", "The Shining", "haunted hotel horror film", 230,
     "Q2001", None, [],
     "Q200092", "1980-05-23", 146.0),
]

TRIANGLE_MOVIES = {"Q47300912", "Q97064968", "Q18154563", "Q1138613"}

FILLER_SURNAMES = [
    "Anderson", "Brown", "Carter", "Davis", "Evans", "Foster", "Garcia",
    "Harris", "Iverson", "Jackson", "Keller", "Lopez", "Mitchell", "Nelson",
    "Osborne", "Parker", "Quinn", "Robinson", "Stewart", "Turner",
    "Underwood", "Vasquez", "Walker", "Young", "Zimmerman", "Bennett",
    "Coleman", "Dawson", "Ellison", "Fleming", "Gordon", "Hayes",
]
FILLER_FIRST = [
    "Laura", "Miguel", "Priya", "Chen", "Amara", "Viktor", "Sofia", "Dmitri",
    "Hannah", "Kwame", "Ingrid", "Rafael", "Yuki", "Omar", "Greta", "Tariq",
]

FILLER_FILM_WORDS = [
    ("Autumn Harvest", "quiet farmland drama of one season"),
    ("Silver Meridian", "expedition thriller across polar ice"),
    ("Glass Harbor", "mystery set in a fogbound port"),
    ("Paper Lanterns", "wartime romance in a coastal village"),
    ("The Long Orchard", "generational saga on a fruit farm"),
    ("Night Cartographers", "heist caper among rare map thieves"),
    ("Salt and Smoke", "kitchen drama of two rival chefs"),
    ("The Borrowed Sky", "aviation adventure between the wars"),
    ("Winter Arithmetic", "chess prodigy coming of age story"),
    ("Copper Field", "strike drama in a mining town"),
    ("Hollow Lighthouse", "ghost story on a rocky islet"),
    ("The Patient Garden", "botanist romance in a glasshouse"),
    ("Iron Confetti", "satire of a collapsing parade business"),
    ("Migrating Rooms", "surreal comedy about a moving hotel"),
    ("The Second Tuesday", "time loop office comedy"),
    ("Gravel Waltz", "road movie with a brass band"),
    ("Quarry Songs", "documentary style drama of stone cutters"),
    ("The Inland Tide", "flood survival story on a river delta"),
    ("Velvet Static", "radio station drama during a blackout"),
    ("Chalk Circus", "travelling performers in a drought year"),
    ("The Ninth Greenhouse", "mystery among competitive gardeners"),
    ("Arrival of Pigeons", "postwar homecoming village tale"),
    ("Tin Constellations", "planetarium caretaker romance"),
    ("The Unsent Letters", "archive clerk uncovers a family secret"),
    ("Driftwood Parliament", "castaways organize a tiny society"),
    ("Meridian Bakery", "night shift comedy in a bakery"),
    ("The Weightless Year", "astronaut readjusts to ground life"),
    ("Orchard of Clocks", "inherited watch shop family drama"),
    ("Blue Tram Terminus", "two strangers share a last tram ride"),
    ("The Cartwheel Summer", "gymnast sisters over one holiday"),
    ("Granite Choir", "miners form a singing group"),
    ("The Furthest Lamp", "lighthouse keepers swap lonely posts"),
]


def main() -> int:
    rng = random.Random(20240614)
    lines: list[dict] = []
    claims_count = 0

    def prop_line(pid, label, desc, datatype):
        lines.append({"type": "property", "id": pid, "label": label,
                      "description": desc, "datatype": datatype})

    def entity_line(eid, label, desc, popularity, claims):
        nonlocal claims_count
        claims_count += len(claims)
        lines.append({"type": "entity", "id": eid, "label": label,
                      "description": desc, "popularity": popularity,
                      "claims": claims})

    def c(pid, datatype, value, qualifiers=None):
        out = {"property": pid, "datatype": datatype, "value": value}
        if qualifiers:
            out["qualifiers"] = qualifiers
        return out

    def ec(pid, value, qualifiers=None):
        return c(pid, "entity_id", value, qualifiers)

    for pid, label, desc, datatype in PROPERTIES:
        prop_line(pid, label, desc, datatype)

    for eid, label, desc, pop in CLASSES:
        entity_line(eid, label, desc, pop, [])

    for eid, label, desc, pop in MOVIE_KEYWORD_ENTITIES:
        claims = []
        if eid == "Q1405677":  # Movie Movie is itself a film
            claims = [ec("P31", FILM), ec("P57", "Q8877"),
                      c("P577", "date", "1978-11-22"),
                      ec("P136", "Q157443")]
        entity_line(eid, label, desc, pop, claims)

    for eid, label, desc, pop in AWARDS + TURING_EXTRAS:
        claims = [ec("P31", AWARD)] if (eid, label, desc, pop) in AWARDS else []
        entity_line(eid, label, desc, pop, claims)

    for cid, label, desc, pop, capital in COUNTRIES:
        entity_line(cid, label, desc, pop,
                    [ec("P31", COUNTRY), ec("P36", capital)])

    for cid, label, desc, pop, country, population in CITIES:
        entity_line(cid, label, desc, pop, [
            ec("P31", CITY), ec("P17", country),
            c("P1082", "numeric", float(population)),
        ])

    for uid, label, desc, pop, city, founded in UNIVERSITIES:
        entity_line(uid, label, desc, pop, [
            ec("P31", UNIVERSITY), ec("P159", city),
            c("P571", "date", founded),
        ])

    for oid, label, desc, pop in OCCUPATIONS + GENRES:
        entity_line(oid, label, desc, pop, [])

    for pid_, label, desc, pop in POSITIONS:
        entity_line(pid_, label, desc, pop, [ec("P31", POSITION)])

    # Presidents
    for eid, label, desc, pop, born, died, height in PRESIDENTS:
        start, end = PRESIDENT_TERMS[eid]
        quals = [{"property": "P580", "datatype": "date", "value": start}]
        if end:
            quals.append({"property": "P582", "datatype": "date", "value": end})
        claims = [
            ec("P31", HUMAN),
            ec("P39", "Q11696", quals),
            ec("P27", "Q30"),
            ec("P106", "Q82955"),
            c("P569", "date", born),
            c("P2048", "numeric", height),
        ]
        if died:
            claims.append(c("P570", "date", died))
        if eid in PRESIDENT_BIRTHPLACES:
            claims.append(ec("P19", PRESIDENT_BIRTHPLACES[eid]))
        entity_line(eid, label, desc, pop, claims)

    # Scientists
    for eid, label, desc, pop, born, died, awards, schools in SCIENTISTS:
        claims = [ec("P31", HUMAN), ec("P106", "Q82594" if "comput" in desc
                                       or eid in ("Q7251",) else "Q901"),
                  c("P569", "date", born)]
        if died:
            claims.append(c("P570", "date", died))
        for award in awards:
            claims.append(ec("P166", award))
        for school in schools:
            claims.append(ec("P69", school))
        claims.append(ec("P27", "Q145" if eid in ("Q7251", "Q7259", "Q1035")
                         else "Q30"))
        entity_line(eid, label, desc, pop, claims)

    # Movie people
    for eid, label, desc, pop, born, spouse, occupations in MOVIE_PEOPLE:
        claims = [ec("P31", HUMAN), c("P569", "date", born)]
        for occ in occupations or []:
            claims.append(ec("P106", occ))
        if spouse:
            claims.append(ec("P26", spouse))
        claims.append(ec("P27", "Q145" if eid in ("Q81328", "Q229166") else "Q30"))
        entity_line(eid, label, desc, pop, claims)

    # Spielberg's Oscar (correct non-answer for the two-award question:
    # he has the statuette but not the computing prize)
    for line in lines:
        if line.get("id") == "Q8877":
            line["claims"].append(ec("P166", "Q8624"))
        if line.get("id") == "Q2001":
            line["claims"].append(ec("P166", "Q1011547"))

    # Movies
    for (mid, label, desc, pop, director, dop, cast, genre, pub,
         duration) in MOVIES:
        claims = [ec("P31", FILM), ec("P57", director), ec("P136", genre),
                  ec("P495", "Q30"), c("P577", "date", pub),
                  c("P2047", "numeric", duration)]
        if dop:
            claims.append(ec("P344", dop))
        for member in cast:
            claims.append(ec("P161", member))
        entity_line(mid, label, desc, pop, claims)

    # Programmatic filler: people and films to reach desk scale.
    filler_people = []
    idx = 0
    for surname in FILLER_SURNAMES:
        for _ in range(3):
            first = FILLER_FIRST[idx % len(FILLER_FIRST)]
            idx += 1
            filler_people.append(f"{first} {surname}")
    universities = [u[0] for u in UNIVERSITIES]
    directed_films: dict[int, list[str]] = {}
    for i in range(len(FILLER_FILM_WORDS)):
        directed_films.setdefault((i * 3) % len(filler_people), []).append(
            f"Q78{20000 + i}")
    for i, name in enumerate(filler_people):
        eid = f"Q77{10000 + i}"
        year = 1930 + (i * 7) % 70
        month = 1 + (i * 5) % 12
        day = 1 + (i * 11) % 28
        occupation = ["Q33999", "Q36180", "Q901", "Q82955", "Q33231"][i % 5]
        claims = [
            ec("P31", HUMAN), ec("P106", occupation),
            c("P569", "date", f"{year:04d}-{month:02d}-{day:02d}"),
            ec("P27", ["Q30", "Q145", "Q142", "Q16", "Q183"][i % 5]),
            ec("P19", CITIES[i % len(CITIES)][0]),
        ]
        if i % 4 == 0:
            claims.append(c("P2048", "numeric", round(1.55 + (i % 9) * 0.05, 2)))
        if i % 6 == 0:
            claims.append(ec("P1411", "Q281939"))
        if i % 3 == 0:
            claims.append(ec("P69", universities[i % len(universities)]))
        if i % 7 == 0:
            claims.append(ec("P108", universities[(i + 3) % len(universities)]))
        for film in directed_films.get(i, []):
            claims.append(ec("P800", film))
        entity_line(eid, name, ["stage actor of regional fame",
                                "novelist of small town stories",
                                "researcher of rivers",
                                "county politician and organizer",
                                "portrait photographer"][i % 5],
                    5 + (i * 3) % 40, claims)

    for i, (title, desc) in enumerate(FILLER_FILM_WORDS):
        mid = f"Q78{20000 + i}"
        director = f"Q77{10000 + (i * 3) % len(filler_people)}"
        cast = [f"Q77{10000 + (i * 3 + k + 1) % len(filler_people)}"
                for k in range(3)]
        year = 1965 + (i * 4) % 55
        claims = [ec("P31", FILM), ec("P57", director),
                  ec("P136", GENRES[i % len(GENRES)][0]),
                  ec("P495", COUNTRIES[i % len(COUNTRIES)][0]),
                  c("P577", "date", f"{year:04d}-{1 + i % 12:02d}-{1 + i % 28:02d}"),
                  c("P2047", "numeric", float(85 + (i * 7) % 70))]
        for member in cast:
            claims.append(ec("P161", member))
        entity_line(mid, title, desc, 3 + (i * 2) % 25, claims)

    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(json.dumps(line, ensure_ascii=False) + "\n")

    entities = sum(1 for l in lines if l["type"] == "entity")
    properties = sum(1 for l in lines if l["type"] == "property")
    print(f"wrote {OUT}: {entities} entities, {properties} properties, "
          f"{claims_count} claims")
    return 0


if __name__ == "__main__":
    sys.exit(main())
