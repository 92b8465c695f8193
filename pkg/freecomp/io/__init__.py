from .measure_file import MeasureFile, dump_measure, load_measure, parse_measure
from .experiment import ExperimentConfig, load_experiment, parse_matrix
from .records import RecordWriter, ResultRecord, inputs_hash, read_records
