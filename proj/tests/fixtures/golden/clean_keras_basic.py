from keras.models import Sequential
from sklearn.model_selection import train_test_split
import pandas as pd

df = pd.read_csv("digits.csv")
y = df["label"]
X = df.drop("label", axis=1)
X_train, X_test, y_train, y_test = train_test_split(X, y)
model = Sequential()
model.fit(X_train, y_train, epochs=5)
model.evaluate(X_test, y_test)
