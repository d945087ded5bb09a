"""Subset of the ToCo telecom ontology used for access-point selection."""
from .terms import IRI

TOCO = "http://purl.org/toco/"
RDF = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"

RDF_TYPE = IRI(RDF + "type")


def toco(name: str) -> IRI:
    return IRI(TOCO + name)


# classes
ACCESS_POINT = toco("AccessPoint")
USER_EQUIPMENT = toco("UserEquipment")
STATION = USER_EQUIPMENT
ASSOCIATION = toco("Association")
WLAN = toco("WLAN")
SERVICE = toco("Service")

# predicates
STATIONS_IN_RANGE = toco("stationsInRange")
ASSOCIATED_STATIONS = toco("associatedStations")
HAS_WLAN = toco("hasWLAN")
ANTENNA_GAIN = toco("antennaGain")  # dBi
HAS_TX_POWER = toco("hasTxPower")  # dBm
FROM = toco("From")
TO = toco("To")
HAS_BANDWIDTH = toco("hasBandWidth")
HAS_VALUE = toco("hasValue")  # Mbit/s
HAS_SERVICE = toco("hasService")
IS_VIDEO = toco("isVideo")
USES_TECHNOLOGY = toco("usesTechnology")

# technologies
WIFI = toco("WiFi")
LTE = toco("LTE")
SATELLITE = toco("Satellite")

CLASSES = frozenset({ACCESS_POINT, USER_EQUIPMENT, ASSOCIATION, WLAN, SERVICE})
PREDICATES = frozenset({
    RDF_TYPE,
    STATIONS_IN_RANGE,
    ASSOCIATED_STATIONS,
    HAS_WLAN,
    ANTENNA_GAIN,
    HAS_TX_POWER,
    FROM,
    TO,
    HAS_BANDWIDTH,
    HAS_VALUE,
    HAS_SERVICE,
    IS_VIDEO,
    USES_TECHNOLOGY,
})
TECHNOLOGIES = {"WiFi": WIFI, "LTE": LTE, "Satellite": SATELLITE}
